//! Cause and effect fractions for a Gaussian distribution of cause magnitudes.
//!
//! With causes `x ~ N(μ, σ²)` and a threshold `μ + X`, the cause fraction is
//! the probability mass above the threshold and the effect fraction is the
//! first moment above it divided by μ. Writing `t = X/σ` and `r = σ/μ`:
//!
//! ```text
//! I_cause(t)     = Φ̄(t)
//! I_effect(t, r) = Φ̄(t) + r·φ(t)
//! ```
//!
//! so the effect-vs-cause relation depends on μ and σ only through `r`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::point::RulePoint;
use crate::quadrature::{integrate, TailCutoff, GAUSSIAN_CUTOFF_SIGMAS};
use crate::scalar::{lit, Scalar};
use crate::special_fn::{self, StdNormalValue};

/// Mean and standard deviation of the cause-magnitude distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams<T> {
    mu: T,
    sigma: T,
}

impl<T: Scalar> GaussianParams<T> {
    /// `mu` must be positive: the effect fraction divides by the mean.
    pub fn new(mu: T, sigma: T) -> Result<Self> {
        if !(mu > T::zero() && mu.is_finite()) {
            return Err(Error::domain(format!("mean must be positive and finite, got {mu}")));
        }
        if !(sigma > T::zero() && sigma.is_finite()) {
            return Err(Error::domain(format!(
                "standard deviation must be positive and finite, got {sigma}"
            )));
        }
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    pub fn ratio(&self) -> ShapeRatio<T> {
        ShapeRatio(self.sigma / self.mu)
    }

    /// Converts an absolute deviation `X` from the mean into `t = X/σ`.
    pub fn normalize(&self, deviation: T) -> Result<T> {
        StdNormalValue::new(deviation / self.sigma).map(StdNormalValue::get)
    }

    /// Absolute threshold `μ + tσ`.
    pub fn threshold(&self, t: T) -> T {
        self.mu + t * self.sigma
    }
}

/// Coefficient of variation `σ/μ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ShapeRatio<T>(T);

impl<T: Scalar> ShapeRatio<T> {
    pub fn new(r: T) -> Result<Self> {
        if r > T::zero() && r.is_finite() {
            Ok(Self(r))
        } else {
            Err(Error::domain(format!("shape ratio sigma/mu must be positive and finite, got {r}")))
        }
    }

    pub fn get(self) -> T {
        self.0
    }

    /// Canonical parameters with this ratio: μ = 1, σ = r.
    pub fn unit_params(self) -> GaussianParams<T> {
        GaussianParams {
            mu: T::one(),
            sigma: self.0,
        }
    }
}

/// Density of N(μ, σ²) at `x`.
pub fn pdf<T: Scalar>(x: T, params: &GaussianParams<T>) -> Result<T> {
    let t = StdNormalValue::new((x - params.mu) / params.sigma)?;
    Ok(t.pdf() / params.sigma)
}

/// Fraction of causes above `μ + tσ`.
pub fn i_cause<T: Scalar>(t: T) -> Result<T> {
    special_fn::std_normal_sf(t)
}

/// Fraction of the total effect contributed by causes above `μ + tσ`.
pub fn i_effect<T: Scalar>(t: T, r: ShapeRatio<T>) -> Result<T> {
    let t = StdNormalValue::new(t)?;
    Ok(t.sf() + r.0 * t.pdf())
}

pub fn rule_point<T: Scalar>(t: T, r: ShapeRatio<T>) -> Result<RulePoint<T>> {
    let t = StdNormalValue::new(t)?;
    Ok(RulePoint {
        i_cause: t.sf(),
        i_effect: t.sf() + r.0 * t.pdf(),
    })
}

/// Probability mass of causes below zero, `P(x < 0) = Φ̄(1/r)`.
pub fn negative_cause_fraction<T: Scalar>(r: ShapeRatio<T>) -> T {
    special_fn::sf(r.0.recip())
}

/// Share of the total effect carried by causes below zero, always ≤ 0:
/// `Φ̄(1/r) − r·φ(1/r)`.
pub fn negative_effect_fraction<T: Scalar>(r: ShapeRatio<T>) -> T {
    let s = r.0.recip();
    let value = special_fn::sf(s) - r.0 * special_fn::pdf(s);
    // cancellation can leave a positive rounding residue for tight distributions
    value.min(T::zero())
}

/// Cause and effect fractions by direct quadrature of the defining
/// integrals, truncated at μ + 12σ. Independent of the closed forms.
pub fn rule_point_by_quadrature<T: Scalar>(
    t: T,
    params: &GaussianParams<T>,
    tol: T,
) -> Result<RulePoint<T>> {
    let t = StdNormalValue::new(t)?.get();
    let lower = params.threshold(t);
    let cutoff = TailCutoff::Gaussian {
        mu: params.mu,
        sigma: params.sigma,
    };
    let density = |x: T| pdf(x, params).unwrap_or_else(|_| T::zero());
    let cause = crate::quadrature::integrate_upper_tail(density, lower, tol, cutoff)?;
    let effect = crate::quadrature::integrate_upper_tail(
        |x: T| x * density(x) / params.mu,
        lower,
        tol,
        cutoff,
    )?;
    Ok(RulePoint {
        i_cause: cause.value,
        i_effect: effect.value,
    })
}

/// Negative-contributor masses `(P(x<0), (1/μ)∫_{−∞}^0 x f)` by quadrature
/// over `[μ − 12σ, 0]`.
pub fn negative_fractions_by_quadrature<T: Scalar>(
    params: &GaussianParams<T>,
    tol: T,
) -> Result<(T, T)> {
    let lower = params.mu - params.sigma * lit(GAUSSIAN_CUTOFF_SIGMAS);
    if lower >= T::zero() {
        return Ok((T::zero(), T::zero()));
    }
    let density = |x: T| pdf(x, params).unwrap_or_else(|_| T::zero());
    let cause = integrate(density, lower, T::zero(), tol)?;
    let effect = integrate(|x: T| x * density(x) / params.mu, lower, T::zero(), tol)?;
    Ok((cause.value, effect.value))
}

/// Empirical fractions from a seeded sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate<T> {
    pub point: RulePoint<T>,
    pub samples: u64,
    /// Binomial standard error of the cause share, `√(p̂(1−p̂)/n)`.
    pub cause_std_error: T,
    /// Delta-method standard error of the ratio estimator for the effect share.
    pub effect_std_error: T,
}

/// Draws `n` causes from N(1, r²) and measures the share above `1 + t·r`
/// and the share of their sum.
///
/// Variates come from a ChaCha8 stream seeded with `seed`, mapped through
/// the inverse survival function, so a given seed reproduces bit for bit on
/// every platform.
pub fn mc_estimate<T: Scalar>(r: ShapeRatio<T>, t: T, n: u64, seed: u64) -> Result<McEstimate<T>> {
    if n == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    let t = StdNormalValue::new(t)?.get().as_f64();
    let r = r.0.as_f64();
    let threshold = 1.0 + t * r;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut above = 0_u64;
    let (mut sum_all, mut sum_above) = (0.0_f64, 0.0_f64);
    let (mut sq_all, mut sq_above) = (0.0_f64, 0.0_f64);
    for _ in 0..n {
        // 53 random bits centred in their cell: u ∈ (0, 1) exclusive.
        let u = ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
        let x = 1.0 + r * special_fn::isf(u);
        sum_all += x;
        sq_all += x * x;
        if x > threshold {
            above += 1;
            sum_above += x;
            sq_above += x * x;
        }
    }

    let nf = n as f64;
    let cause = above as f64 / nf;
    let effect = if sum_all != 0.0 { sum_above / sum_all } else { 0.0 };
    let mean = sum_all / nf;
    // residual e = y − R·x with y = x·1{above}: Σe² = (1 − 2R)·Σ_above x² + R²·Σx²
    let resid_sq = ((1.0 - 2.0 * effect) * sq_above + effect * effect * sq_all).max(0.0);
    let effect_se = if mean != 0.0 {
        (resid_sq / nf).sqrt() / (mean.abs() * nf.sqrt())
    } else {
        f64::INFINITY
    };

    Ok(McEstimate {
        point: RulePoint {
            i_cause: lit(cause),
            i_effect: lit(effect),
        },
        samples: n,
        cause_std_error: lit((cause * (1.0 - cause) / nf).sqrt()),
        effect_std_error: lit(effect_se),
    })
}

/// Side-by-side comparison of [`mc_estimate`] with the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McCheck<T> {
    pub analytic: RulePoint<T>,
    pub estimate: McEstimate<T>,
    /// Allowed |empirical − analytic| per coordinate.
    pub cause_bound: T,
    pub effect_bound: T,
}

impl<T: Scalar> McCheck<T> {
    pub fn cause_delta(&self) -> T {
        self.estimate.point.i_cause - self.analytic.i_cause
    }

    pub fn effect_delta(&self) -> T {
        self.estimate.point.i_effect - self.analytic.i_effect
    }

    pub fn within_bounds(&self) -> bool {
        self.cause_delta().abs() <= self.cause_bound && self.effect_delta().abs() <= self.effect_bound
    }
}

/// Runs [`mc_estimate`] and sets `sigmas`-wide bounds: the cause bound from
/// the binomial standard error at the analytic share, the effect bound from
/// the sample's delta-method standard error.
pub fn mc_check<T: Scalar>(
    r: ShapeRatio<T>,
    t: T,
    n: u64,
    seed: u64,
    sigmas: T,
) -> Result<McCheck<T>> {
    let analytic = rule_point(t, r)?;
    let estimate = mc_estimate(r, t, n, seed)?;
    let p = analytic.i_cause;
    let binomial_se = (p * (T::one() - p) / lit(n as f64)).sqrt();
    Ok(McCheck {
        analytic,
        estimate,
        cause_bound: sigmas * binomial_se,
        effect_bound: sigmas * estimate.effect_std_error,
    })
}
