use crate::error::{FuzzyError, Result};
use std::fmt;

/// A membership grade: a real number in [0, 1].
///
/// Construction rejects out-of-range values. Arithmetic helpers keep results
/// inside the interval, clamping only the last-bit float excursions that
/// operations like `x + y - x*y` can produce.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Grade(f64);

impl Grade {
    pub const ZERO: Grade = Grade(0.0);
    pub const ONE: Grade = Grade(1.0);
    pub const HALF: Grade = Grade(0.5);

    pub fn new(value: f64) -> Result<Grade> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Grade(value))
        } else {
            Err(FuzzyError::GradeOutOfRange(value))
        }
    }

    /// Clamps into [0, 1]. For internal use on arithmetic that is exact on
    /// paper but may drift by an ulp in floats.
    pub(crate) fn clamped(value: f64) -> Grade {
        Grade(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn or(self, other: Grade) -> Grade {
        Grade(self.0.max(other.0))
    }

    pub fn and(self, other: Grade) -> Grade {
        Grade(self.0.min(other.0))
    }

    pub fn not(self) -> Grade {
        Grade(1.0 - self.0)
    }

    /// Algebraic product x·y.
    pub fn prod(self, other: Grade) -> Grade {
        Grade::clamped(self.0 * other.0)
    }

    /// Algebraic sum x ∔ y = x + y − x·y.
    pub fn alg_sum(self, other: Grade) -> Grade {
        Grade::clamped(self.0 + other.0 - self.0 * other.0)
    }

    /// Bounded sum min(1, x + y).
    pub fn bounded_sum(self, other: Grade) -> Grade {
        Grade((self.0 + other.0).min(1.0))
    }

    /// Bounded difference max(0, x + y − 1), the ⊙ of the max-⊙ rule.
    pub fn bounded_product(self, other: Grade) -> Grade {
        Grade((self.0 + other.0 - 1.0).max(0.0))
    }

    /// Drastic product: x if y = 1, y if x = 1, else 0.
    pub fn drastic_product(self, other: Grade) -> Grade {
        if other.0 == 1.0 {
            self
        } else if self.0 == 1.0 {
            other
        } else {
            Grade::ZERO
        }
    }

    pub fn powf(self, alpha: f64) -> Grade {
        Grade::clamped(self.0.powf(alpha))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<Grade> for f64 {
    fn from(g: Grade) -> f64 {
        g.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rejects_out_of_range() {
        assert!(Grade::new(0.0).is_ok());
        assert!(Grade::new(1.0).is_ok());
        assert!(Grade::new(-0.0001).is_err());
        assert!(Grade::new(1.0001).is_err());
        assert!(Grade::new(f64::NAN).is_err());
    }

    #[test]
    fn drastic_product_cases() {
        let g = |v| Grade::new(v).unwrap();
        assert_eq!(g(0.4).drastic_product(g(1.0)), g(0.4));
        assert_eq!(g(1.0).drastic_product(g(0.7)), g(0.7));
        assert_eq!(g(0.4).drastic_product(g(0.7)), Grade::ZERO);
    }

    #[test]
    fn bounded_ops_saturate() {
        let g = |v| Grade::new(v).unwrap();
        assert_eq!(g(0.6).bounded_sum(g(0.5)), Grade::ONE);
        assert_eq!(g(0.6).bounded_product(g(0.3)), Grade::ZERO);
        assert_eq!(g(0.6).bounded_product(g(0.9)).value(), 0.5);
    }
}
