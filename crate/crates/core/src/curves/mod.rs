//! Sampled curves and distribution profiles behind the figures, plus their
//! CSV, JSON and SVG writers.
//!
//! Output is byte-for-byte deterministic: fixed significant digits, no
//! timestamps, and points always in grid order.

mod export;
pub mod format;
pub mod figures;
pub mod svg;

pub use export::{
    curve_from_json, curve_to_json, curves_to_json, profile_from_json, profile_to_json, read_csv,
    write_csv, write_json, write_text, CsvTable, JSON_SCHEMA_VERSION,
};
pub use svg::{render_svg, write_svg, Marker, Plot, PlotLine};

use crate::error::{Error, Result};
use crate::gaussian::{self, GaussianParams, ShapeRatio};
use crate::pareto::{self, ParetoParams};
use crate::scalar::{lit, Scalar};
use crate::solver::threshold_from_cause;

/// Which model produced a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelDescriptor<T> {
    /// Gaussian with shape ratio σ/μ; the first coordinate is `t = X/σ`.
    Gaussian { ratio: T },
    /// Pareto with index α; the first coordinate is `A/x_min`.
    Pareto { alpha: T },
}

impl<T: Scalar> ModelDescriptor<T> {
    pub fn abscissa_name(&self) -> &'static str {
        match self {
            ModelDescriptor::Gaussian { .. } => "t",
            ModelDescriptor::Pareto { .. } => "a_over_xmin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    Logarithmic,
}

impl Spacing {
    pub fn as_str(self) -> &'static str {
        match self {
            Spacing::Uniform => "uniform",
            Spacing::Logarithmic => "log",
        }
    }
}

/// Grid parameters a series was generated with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep<T> {
    pub start: T,
    pub end: T,
    pub steps: usize,
    pub spacing: Spacing,
}

impl<T: Scalar> Sweep<T> {
    fn new(start: T, end: T, steps: usize, spacing: Spacing) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(Error::domain(format!("sweep needs start < end, got [{start}, {end}]")));
        }
        if steps < 2 {
            return Err(Error::domain(format!("sweep needs at least 2 steps, got {steps}")));
        }
        if spacing == Spacing::Logarithmic && !(start > T::zero()) {
            return Err(Error::domain("logarithmic sweep needs a positive start"));
        }
        Ok(Self {
            start,
            end,
            steps,
            spacing,
        })
    }

    /// Grid values; the last one is exactly `end`.
    pub fn grid(&self) -> Vec<T> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|k| {
                if k == last {
                    return self.end;
                }
                let frac: T = lit::<T>(k as f64) / lit(last as f64);
                match self.spacing {
                    Spacing::Uniform => self.start + (self.end - self.start) * frac,
                    Spacing::Logarithmic => self.start * (self.end / self.start).powf(frac),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<T> {
    /// `t` for Gaussian curves, `A/x_min` for Pareto curves.
    pub x: T,
    pub i_cause: T,
    pub i_effect: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries<T> {
    pub label: String,
    pub model: ModelDescriptor<T>,
    pub sweep: Sweep<T>,
    pub points: Vec<CurvePoint<T>>,
}

impl<T: Scalar> CurveSeries<T> {
    /// (I_cause, I_effect) pairs.
    pub fn effect_vs_cause(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .map(|p| (p.i_cause.as_f64(), p.i_effect.as_f64()))
            .collect()
    }

    pub fn cause_vs_abscissa(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.x.as_f64(), p.i_cause.as_f64())).collect()
    }

    pub fn effect_vs_abscissa(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.x.as_f64(), p.i_effect.as_f64())).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint<T> {
    pub x: T,
    pub f: T,
    pub xf: T,
    /// At or above the shading threshold `μ + tσ`.
    pub in_region: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSeries<T> {
    pub label: String,
    pub params: GaussianParams<T>,
    pub shade_t: Option<T>,
    pub sweep: Sweep<T>,
    pub points: Vec<ProfilePoint<T>>,
}

impl<T: Scalar> ProfileSeries<T> {
    pub fn density(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.x.as_f64(), p.f.as_f64())).collect()
    }

    pub fn moment(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.x.as_f64(), p.xf.as_f64())).collect()
    }
}

/// I_cause and I_effect of the Gaussian model on a uniform `t` grid.
pub fn gaussian_curve<T: Scalar>(
    r: ShapeRatio<T>,
    t_min: T,
    t_max: T,
    steps: usize,
) -> Result<CurveSeries<T>> {
    let sweep = Sweep::new(t_min, t_max, steps, Spacing::Uniform)?;
    let points = sweep
        .grid()
        .into_iter()
        .map(|t| {
            let p = gaussian::rule_point(t, r)?;
            Ok(CurvePoint {
                x: t,
                i_cause: p.i_cause,
                i_effect: p.i_effect,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSeries {
        label: format!("sigma/mu = {}", r.get()),
        model: ModelDescriptor::Gaussian { ratio: r.get() },
        sweep,
        points,
    })
}

/// Pareto tail fractions on a log-uniform `A/x_min` grid over `[1, ratio_max]`.
pub fn pareto_curve<T: Scalar>(alpha: T, ratio_max: T, steps: usize) -> Result<CurveSeries<T>> {
    if !(alpha > T::one()) {
        return Err(Error::domain(format!("Pareto curve needs alpha > 1, got {alpha}")));
    }
    if !(ratio_max > T::one()) {
        return Err(Error::domain(format!("ratio_max must exceed 1, got {ratio_max}")));
    }
    let params = ParetoParams::new(alpha, T::one())?;
    let sweep = Sweep::new(T::one(), ratio_max, steps, Spacing::Logarithmic)?;
    let points = sweep
        .grid()
        .into_iter()
        .map(|a| {
            let p = pareto::rule_point_pareto(a, &params)?;
            Ok(CurvePoint {
                x: a,
                i_cause: p.i_cause,
                i_effect: p.i_effect,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSeries {
        label: format!("Pareto alpha = {}", format::fmt_sig(alpha.as_f64(), 4)),
        model: ModelDescriptor::Pareto { alpha },
        sweep,
        points,
    })
}

/// f(x) and x·f(x) on a uniform grid; with `shade_t`, points at or above
/// `μ + shade_t·σ` are flagged as the tail region.
pub fn profile<T: Scalar>(
    params: GaussianParams<T>,
    x_min: T,
    x_max: T,
    steps: usize,
    shade_t: Option<T>,
) -> Result<ProfileSeries<T>> {
    let sweep = Sweep::new(x_min, x_max, steps, Spacing::Uniform)?;
    let threshold = match shade_t {
        Some(t) if !t.is_finite() => return Err(Error::domain("shading threshold must be finite")),
        Some(t) => Some(params.threshold(t)),
        None => None,
    };
    let points = sweep
        .grid()
        .into_iter()
        .map(|x| {
            let f = gaussian::pdf(x, &params)?;
            Ok(ProfilePoint {
                x,
                f,
                xf: x * f,
                in_region: threshold.is_some_and(|b| x >= b),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileSeries {
        label: format!("mu = {}, sigma = {}", params.mu(), params.sigma()),
        params,
        shade_t,
        sweep,
        points,
    })
}

/// Ratios drawn in the default effect-vs-cause family.
pub const FAMILY_RATIOS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
/// Default threshold range and resolution for the family; negative `t`
/// exposes the region where the effect share exceeds 1.
pub const FAMILY_T_RANGE: (f64, f64) = (-0.5, 4.0);
pub const FAMILY_STEPS: usize = 451;

/// One Gaussian curve per ratio over the same `t` grid.
pub fn gaussian_family<T: Scalar>(
    ratios: &[T],
    t_min: T,
    t_max: T,
    steps: usize,
) -> Result<Vec<CurveSeries<T>>> {
    ratios
        .iter()
        .map(|&r| gaussian_curve(ShapeRatio::new(r)?, t_min, t_max, steps))
        .collect()
}

/// Lowest cause share shown in the Gaussian/Pareto comparison.
pub const COMPARISON_MIN_CAUSE: f64 = 1e-4;
pub const COMPARISON_STEPS: usize = 401;

/// Gaussian and Pareto curves over the same cause-share span
/// `[COMPARISON_MIN_CAUSE, 1]`.
///
/// The Gaussian curve runs from `t(1 − c_min)` to `t(c_min)` because its
/// cause share only reaches 1 as `t → −∞`.
pub fn comparison<T: Scalar>(
    r: ShapeRatio<T>,
    alpha: T,
    steps: usize,
) -> Result<(CurveSeries<T>, CurveSeries<T>)> {
    let c_min: T = lit(COMPARISON_MIN_CAUSE);
    let gaussian = gaussian_curve(
        r,
        threshold_from_cause(T::one() - c_min)?,
        threshold_from_cause(c_min)?,
        steps,
    )?;
    let ratio_max = c_min.powf(-alpha.recip());
    let pareto = pareto_curve(alpha, ratio_max, steps)?;
    Ok((gaussian, pareto))
}

/// Pareto index that reproduces 80/20: log₄5.
pub fn log4_5<T: Scalar>() -> T {
    lit::<T>(5.0).ln() / lit::<T>(4.0).ln()
}
