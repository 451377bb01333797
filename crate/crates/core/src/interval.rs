//! Closed intervals `[a, b]` with `a < b`.

use thiserror::Error;

use crate::scalar::Scalar;

/// A closed interval `[a, b]` with finite endpoints and `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    a: T,
    b: T,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid interval: endpoints must be finite with a < b, got [{a}, {b}]")]
pub struct InvalidInterval {
    pub a: f64,
    pub b: f64,
}

impl<T: Scalar> Interval<T> {
    pub fn new(a: T, b: T) -> Result<Self, InvalidInterval> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Self { a, b })
        } else {
            Err(InvalidInterval {
                a: a.as_f64(),
                b: b.as_f64(),
            })
        }
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// `b − a`, always positive.
    pub fn width(&self) -> T {
        self.b - self.a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_and_non_finite() {
        assert!(Interval::new(0.0, 1.0).is_ok());
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NEG_INFINITY, 1.0).is_err());
        assert!(Interval::new(0.0, f64::NAN).is_err());
    }
}
