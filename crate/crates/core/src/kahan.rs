//! Kahan compensated summation.

use num_traits::Float;

/// Compensated accumulator for left-to-right summation.
///
/// The summation order is part of the numeric contract of this crate:
/// results must not depend on any internal parallel decomposition, so
/// callers feed terms in index order and read the final value once.
#[derive(Debug, Clone, Copy)]
pub struct KahanSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Float> KahanSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    pub fn add(&mut self, term: T) {
        let y = term - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum
    }
}

impl<T: Float> Default for KahanSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensates_small_terms() {
        let mut naive = 1.0_f64;
        let mut kahan = KahanSum::new();
        kahan.add(1.0);
        for _ in 0..10 {
            naive += 1e-16;
            kahan.add(1e-16);
        }
        assert_eq!(naive, 1.0); // the point of compensation
        assert_eq!(kahan.value(), 1.0 + 1e-15);
    }

    #[test]
    fn deterministic() {
        let terms: Vec<f64> = (0..1000).map(|k| (k as f64).sin()).collect();
        let run = || {
            let mut s = KahanSum::new();
            for &t in &terms {
                s.add(t);
            }
            s.value()
        };
        assert_eq!(run().to_bits(), run().to_bits());
    }
}
