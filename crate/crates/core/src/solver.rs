//! Inverse problems on the Gaussian model and the named rule table.

use crate::error::{Error, Result};
use crate::gaussian::{rule_point, ShapeRatio};
use crate::point::RulePoint;
use crate::scalar::{lit, Scalar};
use crate::special_fn;

/// Normalized threshold `t` whose cause fraction is `target`.
pub fn threshold_from_cause<T: Scalar>(target: T) -> Result<T> {
    special_fn::std_normal_isf(target)
}

/// The unique `σ/μ` whose curve passes exactly through `p`:
/// `r = (e − c)/φ(t(c))`.
pub fn ratio_from_point<T: Scalar>(p: RulePoint<T>) -> Result<ShapeRatio<T>> {
    let p = p.require_open_cause()?;
    if !(p.i_effect > p.i_cause) {
        return Err(Error::domain(format!(
            "effect fraction must exceed cause fraction (got cause {}, effect {})",
            p.i_cause, p.i_effect
        )));
    }
    let t = threshold_from_cause(p.i_cause)?;
    ShapeRatio::new((p.i_effect - p.i_cause) / special_fn::pdf(t))
}

/// A rule point with its conventional "effect/cause" percentage name.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedRule<T> {
    pub name: String,
    pub t: T,
    pub point: RulePoint<T>,
    /// (effect %, cause %) rounded to the nearest multiple of 5.
    pub rounded: (i64, i64),
}

/// Table rows given either as cause-fraction targets or as thresholds.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleInputs<T> {
    CauseTargets(Vec<T>),
    Thresholds(Vec<T>),
}

/// Percentage rounded to the nearest multiple of 5.
pub fn round_to_five<T: Scalar>(fraction: T) -> i64 {
    let pct = fraction.as_f64() * 100.0;
    let rounded = (pct / 5.0).round() as i64 * 5;
    // keep "-0" out of names
    if rounded == 0 {
        0
    } else {
        rounded
    }
}

/// "effect/cause" name, e.g. `"45/10"`.
pub fn rule_name<T: Scalar>(point: RulePoint<T>) -> String {
    format!("{}/{}", round_to_five(point.i_effect), round_to_five(point.i_cause))
}

pub fn named_rule<T: Scalar>(t: T, r: ShapeRatio<T>) -> Result<NamedRule<T>> {
    let point = rule_point(t, r)?;
    Ok(NamedRule {
        name: rule_name(point),
        t,
        point,
        rounded: (round_to_five(point.i_effect), round_to_five(point.i_cause)),
    })
}

pub fn rule_table<T: Scalar>(r: ShapeRatio<T>, inputs: &RuleInputs<T>) -> Result<Vec<NamedRule<T>>> {
    match inputs {
        RuleInputs::Thresholds(ts) => ts.iter().map(|&t| named_rule(t, r)).collect(),
        RuleInputs::CauseTargets(cs) => cs
            .iter()
            .map(|&c| named_rule(threshold_from_cause(c)?, r))
            .collect(),
    }
}

/// Whether `rule` lies within `tolerance_pct` percentage points of the
/// reference (effect %, cause %) in both coordinates.
pub fn within_points<T: Scalar>(rule: &NamedRule<T>, reference: (f64, f64), tolerance_pct: f64) -> bool {
    let effect = rule.point.i_effect.as_f64() * 100.0;
    let cause = rule.point.i_cause.as_f64() * 100.0;
    (effect - reference.0).abs() <= tolerance_pct && (cause - reference.1).abs() <= tolerance_pct
}

/// Default rule-table thresholds for a ratio-2 distribution.
pub fn classic_thresholds<T: Scalar>() -> Vec<T> {
    [1.7, 1.3, 1.1, 0.67].into_iter().map(lit).collect()
}
