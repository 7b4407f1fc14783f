use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A pair of integrated fractions (cause share, effect share).
///
/// The effect share is never clamped: above 1 means the vital few deliver
/// more than the whole, offset by negative contributors.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RulePoint<T> {
    pub i_cause: T,
    pub i_effect: T,
}

impl<T: Scalar> RulePoint<T> {
    pub fn new(i_cause: T, i_effect: T) -> Result<Self> {
        if !(i_cause >= T::zero() && i_cause <= T::one()) {
            return Err(Error::domain(format!(
                "cause fraction must lie in [0, 1], got {i_cause}"
            )));
        }
        if !i_effect.is_finite() {
            return Err(Error::domain(format!("effect fraction must be finite, got {i_effect}")));
        }
        Ok(Self { i_cause, i_effect })
    }

    /// Both shares raised to `n`; `n` need not be an integer.
    pub fn powf(self, n: T) -> Self {
        Self {
            i_cause: self.i_cause.powf(n),
            i_effect: self.i_effect.powf(n),
        }
    }

    pub(crate) fn require_open_cause(self) -> Result<Self> {
        if self.i_cause > T::zero() && self.i_cause < T::one() {
            Ok(self)
        } else {
            Err(Error::domain(format!(
                "cause fraction must lie strictly between 0 and 1, got {}",
                self.i_cause
            )))
        }
    }
}
