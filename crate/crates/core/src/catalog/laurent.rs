//! Exact Laurent polynomials in `t` with an optional `log(t)` term.
//!
//! The power-curve reduction rewrites `∫ s^{n-1}√(1+s²) ds` through
//! `t = s + √(1+s²)` into `2^{-n-1} ∫ (t²-1)^{n-1}(t⁴+2t²+1) t^{-n-2} dt`,
//! whose integrand expands into finitely many powers of `t`. Coefficients
//! are exact rationals over arbitrary-precision integers; doubles would
//! corrupt them already for moderate `n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::expr::Expr;
use crate::scalar::Scalar;

/// `Σ c_j·t^j + c_log·log(t)` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
    log_coeff: BigRational,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Coefficient of `t^exp` (zero when absent).
    pub fn coefficient(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn log_coefficient(&self) -> &BigRational {
        &self.log_coeff
    }

    /// Power-part terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Termwise derivative in `t`; `log(t)` differentiates to `t^-1`.
    pub fn derivative(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&exp, coeff) in &self.coeffs {
            if exp != 0 {
                out.add_term(exp - 1, coeff * BigRational::from(BigInt::from(exp)));
            }
        }
        out.add_term(-1, self.log_coeff.clone());
        out
    }

    /// Termwise antiderivative in `t`: `t^j → t^{j+1}/(j+1)` for `j ≠ -1`
    /// and `t^{-1} → log(t)`.
    pub fn integral(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&exp, coeff) in &self.coeffs {
            if exp == -1 {
                out.log_coeff += coeff;
            } else {
                out.add_term(exp + 1, coeff / BigRational::from(BigInt::from(exp + 1)));
            }
        }
        out
    }

    /// The expression `Σ c_j·u^j + c_log·log(u)` at `u = t`, with terms
    /// emitted in decreasing exponent order.
    pub fn to_expr<T: Scalar>(&self, t: &Expr<T>) -> Expr<T> {
        let rational = |c: &BigRational| {
            Expr::Constant(T::from_f64_lossy(
                num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN),
            ))
        };
        let mut acc: Option<Expr<T>> = None;
        let mut push = |term: Expr<T>| {
            acc = Some(match acc.take() {
                Some(sum) => sum + term,
                None => term,
            });
        };
        for (&exp, coeff) in self.coeffs.iter().rev() {
            let power = match exp {
                0 => None,
                1 => Some(t.clone()),
                _ => Some(t.clone().pow(Expr::Constant(T::from_f64_lossy(exp as f64)))),
            };
            let term = match power {
                Some(p) => rational(coeff) * p,
                None => rational(coeff),
            };
            push(term);
        }
        if !self.log_coeff.is_zero() {
            push(rational(&self.log_coeff) * t.clone().log());
        }
        acc.unwrap_or(Expr::Constant(T::zero())).simplify()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut write_term =
            |f: &mut fmt::Formatter<'_>, coeff: &BigRational, body: Option<String>| {
                let sign = if coeff.is_negative() { "-" } else { "+" };
                if first {
                    first = false;
                    if coeff.is_negative() {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {sign} ")?;
                }
                let mag = coeff.abs();
                let (numer, denom) = (mag.numer().clone(), mag.denom().clone());
                match body {
                    Some(body) => {
                        if numer.is_one() {
                            write!(f, "{body}")?;
                        } else {
                            write!(f, "{numer}*{body}")?;
                        }
                        if !denom.is_one() {
                            write!(f, "/{denom}")?;
                        }
                    }
                    None => {
                        write!(f, "{numer}")?;
                        if !denom.is_one() {
                            write!(f, "/{denom}")?;
                        }
                    }
                }
                Ok(())
            };
        for (&exp, coeff) in self.coeffs.iter().rev() {
            let body = match exp {
                0 => None,
                1 => Some("t".to_string()),
                _ => Some(format!("t^{exp}")),
            };
            write_term(f, coeff, body)?;
        }
        if !self.log_coeff.is_zero() {
            write_term(f, &self.log_coeff, Some("log(t)".to_string()))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The expanded reduction integrand
/// `2^{-n-1}·(t²-1)^{n-1}·(t⁴+2t²+1)·t^{-n-2}` for the curve family
/// index `n ≥ 1`, as an exact Laurent polynomial.
pub fn neil_integrand(n: u32) -> LaurentPoly {
    assert!(n >= 1, "the curve family starts at n = 1");
    // (t²-1)^(n-1) over the integers
    let mut poly: BTreeMap<i64, BigInt> = BTreeMap::new();
    poly.insert(0, BigInt::one());
    for _ in 1..n {
        let mut next: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&e, c) in &poly {
            *next.entry(e + 2).or_insert_with(BigInt::zero) += c;
            *next.entry(e).or_insert_with(BigInt::zero) -= c;
        }
        poly = next;
    }
    // × (t⁴ + 2t² + 1)
    let mut product: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (&e, c) in &poly {
        *product.entry(e + 4).or_insert_with(BigInt::zero) += c;
        *product.entry(e + 2).or_insert_with(BigInt::zero) += c * 2;
        *product.entry(e).or_insert_with(BigInt::zero) += c;
    }
    // × t^(-n-2) / 2^(n+1)
    let shift = -(i64::from(n) + 2);
    let scale = BigRational::new(BigInt::one(), BigInt::one() << (n as usize + 1));
    let mut out = LaurentPoly::zero();
    for (e, c) in product {
        out.add_term(e + shift, BigRational::from(c) * &scale);
    }
    out
}

/// Termwise antiderivative of [`neil_integrand`]: the closed form of
/// `∫ s^{n-1}√(1+s²) ds` in the variable `t = s + √(1+s²)`.
pub fn neil_reduce(n: u32) -> LaurentPoly {
    neil_integrand(n).integral()
}
