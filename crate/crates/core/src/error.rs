use std::path::PathBuf;

use thiserror::Error;

/// Why a Pareto-index fit has no finite answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// Effect share equals cause share: no concentration, the index is unbounded.
    NoConcentration,
    /// Effect share is 1: every index α ≤ 1 reproduces the point.
    TotalConcentration,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degeneracy::NoConcentration => {
                f.write_str("no concentration (effect share equals cause share, alpha unbounded)")
            }
            Degeneracy::TotalConcentration => {
                f.write_str("total concentration (effect share is 1, any alpha <= 1 fits)")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),

    #[error("quadrature did not converge after {evaluations} evaluations (best estimate {best}, error estimate {error_estimate})")]
    Convergence {
        best: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("degenerate fit: {0}")]
    Degenerate(Degeneracy),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-readable category, used by the CLI on stderr.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Convergence { .. } => "convergence",
            Error::Degenerate(_) => "degenerate",
            Error::Io { .. } => "io",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
