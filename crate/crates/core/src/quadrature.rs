//! Euler-sum quadrature: uniform left-endpoint approximation of
//! integrals, arc-length integrand construction, and residual checks for
//! claimed antiderivatives.

use thiserror::Error;

use crate::expr::{DiffError, EvalError, Expr};
use crate::interval::Interval;
use crate::kahan::KahanSum;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("subdivision count must be positive")]
    ZeroSubdivisions,
    #[error("evaluation failed at x = {x}: {source}")]
    Eval {
        x: f64,
        #[source]
        source: EvalError,
    },
}

/// An Euler sum together with the inputs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerSumResult<T> {
    pub n: u64,
    pub value: T,
    pub interval: Interval<T>,
}

impl<T: Scalar> EulerSumResult<T> {
    pub fn compute(g: &Expr<T>, iv: Interval<T>, n: u64) -> Result<Self, QuadratureError> {
        Ok(Self {
            n,
            value: euler_sum(g, iv, n)?,
            interval: iv,
        })
    }
}

/// The left-endpoint Euler sum `Σ_{k=0}^{n-1} g(x_k)·Δx` with
/// `x_k = a + kΔx` and `Δx = (b−a)/n`, accumulated left-to-right with
/// compensation.
pub fn euler_sum<T: Scalar>(g: &Expr<T>, iv: Interval<T>, n: u64) -> Result<T, QuadratureError> {
    if n == 0 {
        return Err(QuadratureError::ZeroSubdivisions);
    }
    let a = iv.a();
    let dx = iv.width() / T::from_index(n);
    let mut sum = KahanSum::new();
    for k in 0..n {
        let x = a + T::from_index(k) * dx;
        let v = g.eval(x).map_err(|source| QuadratureError::Eval {
            x: x.as_f64(),
            source,
        })?;
        sum.add(v * dx);
    }
    Ok(sum.value())
}

/// The arc-length integrand `√(1 + f'(x)²)`, simplified.
pub fn arc_integrand<T: Scalar>(f: &Expr<T>) -> Result<Expr<T>, DiffError> {
    let fp = f.differentiate()?;
    let one = Expr::Constant(T::one());
    let two = Expr::Constant(T::from_f64_lossy(2.0));
    Ok((one + fp.pow(two)).sqrt().simplify())
}

/// `|Σ g(x_k)Δx − (G(b) − G(a))|`: how far the Euler sum of `g` is from
/// the increment of a claimed antiderivative `G`.
pub fn ftc_residual<T: Scalar>(
    g_antiderivative: &Expr<T>,
    g: &Expr<T>,
    iv: Interval<T>,
    n: u64,
) -> Result<T, QuadratureError> {
    let sum = euler_sum(g, iv, n)?;
    let at = |x: T| {
        g_antiderivative
            .eval(x)
            .map_err(|source| QuadratureError::Eval {
                x: x.as_f64(),
                source,
            })
    };
    let increment = at(iv.b())? - at(iv.a())?;
    Ok((sum - increment).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::Expr64;

    fn iv(a: f64, b: f64) -> Interval<f64> {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn unit_integrand() {
        let g: Expr64 = parse("1").unwrap();
        for n in [1, 2, 4, 8, 10] {
            assert_eq!(euler_sum(&g, iv(0.0, 1.0), n).unwrap(), 1.0);
        }
        for n in [3, 7, 49] {
            let s = euler_sum(&g, iv(0.0, 1.0), n).unwrap();
            assert!((s - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn left_sum_of_identity() {
        // Σ_{k=0}^{9} (k/10)(1/10) = 45/100
        let g: Expr64 = parse("x").unwrap();
        let s = euler_sum(&g, iv(0.0, 1.0), 10).unwrap();
        assert!((s - 0.45).abs() < 1e-15);
    }

    #[test]
    fn parabola_arc_integral() {
        let g: Expr64 = parse("sqrt(1+x^2)").unwrap();
        let exact = 2.0_f64.sqrt() / 2.0 + (1.0 + 2.0_f64.sqrt()).ln() / 2.0;
        let s = euler_sum(&g, iv(0.0, 1.0), 100_000).unwrap();
        assert!((s - exact).abs() < 2e-5);
    }

    #[test]
    fn integrand_of_semicubical_collapses() {
        let f: Expr64 = parse("2*x^(3/2)/3").unwrap();
        let g = arc_integrand(&f).unwrap();
        assert_eq!(g, parse::<f64>("sqrt(1+x)").unwrap());
    }

    #[test]
    fn integrand_of_constant_is_one() {
        let f: Expr64 = parse("42").unwrap();
        assert_eq!(arc_integrand(&f).unwrap(), Expr::Constant(1.0));
    }

    #[test]
    fn integrand_of_cosh_matches_cosh_numerically() {
        let f: Expr64 = parse("cosh(x)").unwrap();
        let g = arc_integrand(&f).unwrap();
        assert_eq!(g, parse::<f64>("sqrt(1+sinh(x)^2)").unwrap());
        for k in 0..50 {
            let x = -2.0 + 0.08 * k as f64;
            let want = x.cosh();
            let got = g.eval(x).unwrap();
            assert!((got - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn ftc_residual_linear_integrand() {
        // left-sum bias for g = x on [0,1] is exactly 1/(2n)
        let g_anti: Expr64 = parse("x^2/2").unwrap();
        let g: Expr64 = parse("x").unwrap();
        let r = ftc_residual(&g_anti, &g, iv(0.0, 1.0), 1000).unwrap();
        assert!((r - 5.0e-4).abs() < 1e-6);
    }

    #[test]
    fn ftc_residual_exact_for_constant() {
        let g_anti: Expr64 = parse("x").unwrap();
        let g: Expr64 = parse("1").unwrap();
        for n in [1, 10, 1234] {
            assert!(ftc_residual(&g_anti, &g, iv(-2.0, 5.0), n).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn euler_errors_carry_the_grid_point() {
        let g: Expr64 = parse("1/x").unwrap();
        match euler_sum(&g, iv(0.0, 1.0), 4) {
            Err(QuadratureError::Eval { x, .. }) => assert_eq!(x, 0.0),
            other => panic!("expected eval error, got {other:?}"),
        }
    }
}
