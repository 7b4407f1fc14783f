//! Pareto (Type I) comparison model.
//!
//! For `f(x) = α·x_min^α / x^(α+1)` on `[x_min, ∞)` the tail fractions above a
//! threshold `A` are power laws in `x_min/A`:
//!
//! ```text
//! I_cause  = (x_min/A)^α
//! I_effect = (x_min/A)^(α−1)        (α > 1; the mean diverges otherwise)
//! ```
//!
//! Eliminating `A` gives `ln I_effect / ln I_cause = (α−1)/α`, so a single
//! rule point fixes α and every power `(c^n, e^n)` of it lies on the same curve.

use crate::error::{Degeneracy, Error, Result};
use crate::point::RulePoint;
use crate::quadrature::{integrate_upper_tail, TailCutoff};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoParams<T> {
    alpha: T,
    x_min: T,
}

impl<T: Scalar> ParetoParams<T> {
    pub fn new(alpha: T, x_min: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha.is_finite()) {
            return Err(Error::domain(format!("Pareto index must be positive and finite, got {alpha}")));
        }
        if !(x_min > T::zero() && x_min.is_finite()) {
            return Err(Error::domain(format!("x_min must be positive and finite, got {x_min}")));
        }
        Ok(Self { alpha, x_min })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn x_min(&self) -> T {
        self.x_min
    }

    fn check_threshold(&self, a: T) -> Result<T> {
        if a >= self.x_min && a.is_finite() {
            Ok(self.x_min / a)
        } else {
            Err(Error::domain(format!(
                "threshold {a} lies below x_min = {}",
                self.x_min
            )))
        }
    }
}

pub fn pdf_pareto<T: Scalar>(x: T, params: &ParetoParams<T>) -> Result<T> {
    let scale = params.check_threshold(x)?;
    // α·x_min^α / x^(α+1) written as (α/x)·(x_min/x)^α
    Ok(params.alpha / x * scale.powf(params.alpha))
}

/// Fraction of causes above `a`.
pub fn i_cause_pareto<T: Scalar>(a: T, params: &ParetoParams<T>) -> Result<T> {
    let scale = params.check_threshold(a)?;
    Ok(scale.powf(params.alpha))
}

/// Fraction of the total effect above `a`. For α ≤ 1 the total is infinite
/// and any finite-threshold tail holds all of it, so the result is exactly 1.
pub fn i_effect_pareto<T: Scalar>(a: T, params: &ParetoParams<T>) -> Result<T> {
    let scale = params.check_threshold(a)?;
    if params.alpha > T::one() {
        Ok(scale.powf(params.alpha - T::one()))
    } else {
        Ok(T::one())
    }
}

pub fn rule_point_pareto<T: Scalar>(a: T, params: &ParetoParams<T>) -> Result<RulePoint<T>> {
    Ok(RulePoint {
        i_cause: i_cause_pareto(a, params)?,
        i_effect: i_effect_pareto(a, params)?,
    })
}

/// Threshold `A` whose cause fraction is `target`: `x_min·target^(−1/α)`.
pub fn threshold_for_cause<T: Scalar>(target: T, params: &ParetoParams<T>) -> Result<T> {
    if !(target > T::zero() && target <= T::one()) {
        return Err(Error::domain(format!(
            "cause fraction must lie in (0, 1], got {target}"
        )));
    }
    Ok(params.x_min * target.powf(-params.alpha.recip()))
}

/// Effect share on the curve of index `alpha` at cause share `i_cause`:
/// `i_cause^((α−1)/α)`.
pub fn effect_on_curve<T: Scalar>(alpha: T, i_cause: T) -> T {
    if alpha > T::one() {
        i_cause.powf((alpha - T::one()) / alpha)
    } else {
        T::one()
    }
}

/// Pareto index reproducing `p`: `α = ln c / (ln c − ln e)`.
///
/// `e == c` and `e == 1` have no finite single answer and come back as
/// [`Error::Degenerate`].
pub fn alpha_from_point<T: Scalar>(p: RulePoint<T>) -> Result<T> {
    let p = p.require_open_cause()?;
    let (c, e) = (p.i_cause, p.i_effect);
    if !(e > T::zero() && e <= T::one()) {
        return Err(Error::domain(format!(
            "effect fraction must lie in (0, 1] for a Pareto fit, got {e}"
        )));
    }
    if e == T::one() {
        return Err(Error::Degenerate(Degeneracy::TotalConcentration));
    }
    if e < c {
        return Err(Error::domain(format!(
            "effect fraction {e} is below cause fraction {c}; no positive Pareto index fits"
        )));
    }
    if e == c {
        return Err(Error::Degenerate(Degeneracy::NoConcentration));
    }
    let (ln_c, ln_e) = (c.ln(), e.ln());
    Ok(ln_c / (ln_c - ln_e))
}

/// `(c^n, e^n)` for real `n`: another point on the base point's Pareto curve.
pub fn iterated_rule<T: Scalar>(base: RulePoint<T>, n: T) -> Result<RulePoint<T>> {
    alpha_from_point(base)?;
    if !(n > T::zero() && n.is_finite()) {
        return Err(Error::domain(format!("iteration count must be positive, got {n}")));
    }
    Ok(base.powf(n))
}

/// `[(c^n, e^n) for n in 1..=n_max]`: the 80/20, 64/4, 51.2/0.8, … family.
pub fn iterated_rules<T: Scalar>(base: RulePoint<T>, n_max: usize) -> Result<Vec<RulePoint<T>>> {
    alpha_from_point(base)?;
    if n_max == 0 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    Ok((1..=n_max)
        .map(|n| {
            let mut point = base;
            for _ in 1..n {
                point.i_cause = point.i_cause * base.i_cause;
                point.i_effect = point.i_effect * base.i_effect;
            }
            point
        })
        .collect())
}

/// Tail fractions by quadrature of the density and first moment, with the
/// infinite limit handled by doubling. Requires α > 1.
pub fn rule_point_by_quadrature<T: Scalar>(
    a: T,
    params: &ParetoParams<T>,
    tol: T,
) -> Result<RulePoint<T>> {
    params.check_threshold(a)?;
    if params.alpha <= T::one() {
        return Err(Error::domain("first moment diverges for alpha <= 1"));
    }
    let density = |x: T| pdf_pareto(x, params).unwrap_or_else(|_| T::zero());
    let moment = |x: T| x * density(x);
    let cause = integrate_upper_tail(density, a, tol, TailCutoff::Doubling)?;
    let total = integrate_upper_tail(moment, params.x_min, tol, TailCutoff::Doubling)?;
    let above = integrate_upper_tail(moment, a, tol, TailCutoff::Doubling)?;
    Ok(RulePoint {
        i_cause: cause.value,
        i_effect: above.value / total.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn log4_5() -> f64 {
        5.0_f64.ln() / 4.0_f64.ln()
    }

    fn params(alpha: f64, x_min: f64) -> ParetoParams<f64> {
        ParetoParams::new(alpha, x_min).unwrap()
    }

    fn pt(c: f64, e: f64) -> RulePoint<f64> {
        RulePoint::new(c, e).unwrap()
    }

    #[test]
    fn density_examples() {
        let p = params(2.0, 1.0);
        assert_eq!(pdf_pareto(1.0, &p).unwrap(), 2.0);
        assert_eq!(pdf_pareto(2.0, &p).unwrap(), 0.25);
        let p = params(1.7, 3.0);
        assert_abs_diff_eq!(pdf_pareto(3.0, &p).unwrap(), 1.7 / 3.0, epsilon = 1e-15);
        assert!(pdf_pareto(0.5, &params(2.0, 1.0)).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(ParetoParams::new(0.0, 1.0).is_err());
        assert!(ParetoParams::new(1.0, 0.0).is_err());
        assert!(ParetoParams::new(-1.0, 1.0).is_err());
        assert!(ParetoParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn tail_fraction_examples() {
        let p = params(2.0, 1.0);
        assert_eq!(i_cause_pareto(1.0, &p).unwrap(), 1.0);
        assert_eq!(i_cause_pareto(2.0, &p).unwrap(), 0.25);
        assert_eq!(i_effect_pareto(2.0, &p).unwrap(), 0.5);
        assert_eq!(i_effect_pareto(7.0, &params(0.8, 2.0)).unwrap(), 1.0);
        assert_eq!(i_effect_pareto(1.0, &params(0.8, 1.0)).unwrap(), 1.0);
        assert_eq!(i_effect_pareto(5.0, &params(3.0, 5.0)).unwrap(), 1.0);
        assert!(i_cause_pareto(0.9, &p).is_err());
        assert!(i_effect_pareto(0.9, &p).is_err());
    }

    #[test]
    fn eighty_twenty_threshold() {
        let p = params(log4_5(), 1.0);
        let a = threshold_for_cause(0.2, &p).unwrap();
        assert_abs_diff_eq!(a, 5.0_f64.powf(1.0 / log4_5()), epsilon = 1e-12);
        assert_abs_diff_eq!(a, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(i_cause_pareto(a, &p).unwrap(), 0.2, epsilon = 1e-14);
        assert_abs_diff_eq!(i_effect_pareto(a, &p).unwrap(), 0.8, epsilon = 1e-14);
    }

    #[test]
    fn alpha_examples() {
        assert_abs_diff_eq!(alpha_from_point(pt(0.2, 0.8)).unwrap(), 1.160_964_047_443_681_2, epsilon = 1e-14);
        assert_abs_diff_eq!(alpha_from_point(pt(0.25, 0.5)).unwrap(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn alpha_degenerate_and_invalid() {
        assert!(matches!(
            alpha_from_point(pt(0.3, 0.3)),
            Err(Error::Degenerate(Degeneracy::NoConcentration))
        ));
        assert!(matches!(
            alpha_from_point(pt(0.3, 1.0)),
            Err(Error::Degenerate(Degeneracy::TotalConcentration))
        ));
        assert!(matches!(alpha_from_point(pt(0.3, 0.2)), Err(Error::Domain(_))));
        assert!(matches!(alpha_from_point(pt(0.3, 1.2)), Err(Error::Domain(_))));
        assert!(matches!(alpha_from_point(pt(0.0, 0.5)), Err(Error::Domain(_))));
        assert!(matches!(alpha_from_point(pt(1.0, 1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn iterated_family() {
        let rules = iterated_rules(pt(0.2, 0.8), 4).unwrap();
        let expected = [(0.2, 0.8), (0.04, 0.64), (0.008, 0.512), (0.0016, 0.4096)];
        assert_eq!(rules.len(), 4);
        let p = params(log4_5(), 1.0);
        for (got, (c, e)) in rules.iter().zip(expected) {
            assert_abs_diff_eq!(got.i_cause, c, epsilon = 1e-12);
            assert_abs_diff_eq!(got.i_effect, e, epsilon = 1e-12);
            let a = threshold_for_cause(got.i_cause, &p).unwrap();
            assert_abs_diff_eq!(i_cause_pareto(a, &p).unwrap(), c, epsilon = 1e-12);
            assert_abs_diff_eq!(i_effect_pareto(a, &p).unwrap(), e, epsilon = 1e-12);
        }
        assert!(iterated_rules(pt(0.2, 0.8), 0).is_err());
        assert!(iterated_rules(pt(0.5, 0.2), 3).is_err());
    }

    #[test]
    fn non_integer_iteration_stays_on_curve() {
        let p = iterated_rule(pt(0.2, 0.8), 1.5).unwrap();
        assert_abs_diff_eq!(p.i_cause, 0.2_f64.powf(1.5), epsilon = 1e-15);
        assert_abs_diff_eq!(p.i_effect, effect_on_curve(log4_5(), p.i_cause), epsilon = 1e-12);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for alpha in [1.16, 2.0, 3.0] {
            for ratio in [1.5, 2.0, 5.0] {
                let p = params(alpha, 1.0);
                let closed = rule_point_pareto(ratio, &p).unwrap();
                let quad = rule_point_by_quadrature(ratio, &p, 1e-11).unwrap();
                assert_abs_diff_eq!(closed.i_cause, quad.i_cause, epsilon = 1e-8);
                assert_abs_diff_eq!(closed.i_effect, quad.i_effect, epsilon = 1e-8);
            }
        }
        assert!(rule_point_by_quadrature(2.0, &params(0.9, 1.0), 1e-10).is_err());
    }

    #[test]
    fn normalization_by_quadrature() {
        let p = params(2.0, 1.0);
        let r = integrate_upper_tail(
            |x: f64| pdf_pareto(x, &p).unwrap(),
            1.0,
            1e-12,
            TailCutoff::Doubling,
        )
        .unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn single_precision() {
        let p = ParetoParams::new(2.0_f32, 1.0).unwrap();
        assert_eq!(i_effect_pareto(2.0_f32, &p).unwrap(), 0.5);
    }

    proptest! {
        #[test]
        fn log_ratio_identity(ratio in 1.0001f64..1e6) {
            let p = params(log4_5(), 1.0);
            let c = i_cause_pareto(ratio, &p).unwrap();
            let e = i_effect_pareto(ratio, &p).unwrap();
            prop_assert!((e.ln() / c.ln() - 0.8_f64.ln() / 0.2_f64.ln()).abs() <= 1e-12);
        }

        #[test]
        fn scale_free(alpha in 0.2f64..6.0, x_min in 0.01f64..100.0, ratio in 1.0f64..100.0) {
            let a = rule_point_pareto(x_min * ratio, &params(alpha, x_min)).unwrap();
            let b = rule_point_pareto(10.0 * x_min * ratio, &params(alpha, 10.0 * x_min)).unwrap();
            prop_assert!((a.i_cause - b.i_cause).abs() <= 1e-14 * a.i_cause.max(1e-300) + 1e-300);
            prop_assert!((a.i_effect - b.i_effect).abs() <= 1e-14);
        }

        #[test]
        fn alpha_round_trip(c in 0.001f64..0.99, frac in 0.01f64..0.99) {
            let e = c + frac * (1.0 - c);
            prop_assume!(e < 1.0 && e > c);
            let alpha = alpha_from_point(pt(c, e)).unwrap();
            let p = params(alpha, 1.0);
            let a = threshold_for_cause(c, &p).unwrap();
            prop_assert!((i_cause_pareto(a, &p).unwrap() - c).abs() <= 1e-12);
            prop_assert!((i_effect_pareto(a, &p).unwrap() - e).abs() <= 1e-12);
        }
    }
}
