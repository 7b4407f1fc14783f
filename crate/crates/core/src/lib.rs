//! Concentration ("80/20") fractions for Gaussian and Pareto distributions.
//!
//! The core is generic over [`Scalar`] (`f32` or `f64`). The aliases at the
//! crate root fix the scalar to `f64`; the `*32` variants use `f32`.

pub mod curves;
pub mod error;
pub mod gaussian;
pub mod pareto;
pub mod point;
pub mod quadrature;
pub mod scalar;
pub mod solver;
pub mod special_fn;

pub use error::{Degeneracy, Error, Result};
pub use scalar::Scalar;

pub type GaussianParams = gaussian::GaussianParams<f64>;
pub type ShapeRatio = gaussian::ShapeRatio<f64>;
pub type ParetoParams = pareto::ParetoParams<f64>;
pub type RulePoint = point::RulePoint<f64>;
pub type NamedRule = solver::NamedRule<f64>;
pub type CurveSeries = curves::CurveSeries<f64>;
pub type ProfileSeries = curves::ProfileSeries<f64>;
pub type McCheck = gaussian::McCheck<f64>;

pub type GaussianParams32 = gaussian::GaussianParams<f32>;
pub type ShapeRatio32 = gaussian::ShapeRatio<f32>;
pub type ParetoParams32 = pareto::ParetoParams<f32>;
pub type RulePoint32 = point::RulePoint<f32>;
pub type NamedRule32 = solver::NamedRule<f32>;
pub type CurveSeries32 = curves::CurveSeries<f32>;
pub type ProfileSeries32 = curves::ProfileSeries<f32>;
pub type McCheck32 = gaussian::McCheck<f32>;
