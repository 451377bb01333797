//! Numeric evaluation.

use super::error::{DomainOp, EvalDomainError, EvalError, NodePath};
use super::{BinaryOp, Expr, NamedConstant, UnaryOp};
use crate::scalar::Scalar;

/// Largest exponent magnitude evaluated by repeated squaring; integer
/// exponents beyond it (and all non-integer ones) go through `exp·log`.
const SQUARING_LIMIT: f64 = 64.0;

impl<T: Scalar> Expr<T> {
    /// Evaluates the expression at `x`.
    ///
    /// Pure and deterministic: identical inputs give bit-identical
    /// results. Domain violations surface as [`EvalDomainError`]; an
    /// operation that overflows to an infinity is reported as
    /// [`EvalError::NonFinite`] rather than returned.
    pub fn eval(&self, x: T) -> Result<T, EvalError> {
        match self {
            Expr::Constant(c) => Ok(*c),
            Expr::NamedConstant(NamedConstant::Pi) => Ok(T::PI()),
            Expr::NamedConstant(NamedConstant::E) => Ok(T::E()),
            Expr::Variable => Ok(x),
            Expr::Unary(op, child) => {
                let v = child.eval(x).map_err(|e| e.through_child(0))?;
                let out = match op {
                    UnaryOp::Neg => -v,
                    UnaryOp::Sin => v.sin(),
                    UnaryOp::Cos => v.cos(),
                    UnaryOp::Tan => v.tan(),
                    UnaryOp::Atan => v.atan(),
                    UnaryOp::Exp => v.exp(),
                    UnaryOp::Log => {
                        if v <= T::zero() {
                            return Err(domain(DomainOp::Log, v));
                        }
                        v.ln()
                    }
                    UnaryOp::Sqrt => {
                        if v < T::zero() {
                            return Err(domain(DomainOp::Sqrt, v));
                        }
                        v.sqrt()
                    }
                    UnaryOp::Sinh => v.sinh(),
                    UnaryOp::Cosh => v.cosh(),
                    UnaryOp::Abs => v.abs(),
                };
                finite(out)
            }
            Expr::Binary(op, left, right) => {
                let l = left.eval(x).map_err(|e| e.through_child(0))?;
                let r = right.eval(x).map_err(|e| e.through_child(1))?;
                let out = match op {
                    BinaryOp::Add => l + r,
                    BinaryOp::Sub => l - r,
                    BinaryOp::Mul => l * r,
                    BinaryOp::Div => {
                        if r == T::zero() {
                            return Err(domain(DomainOp::Div, r));
                        }
                        l / r
                    }
                    BinaryOp::Pow => pow(l, r)?,
                };
                finite(out)
            }
        }
    }
}

fn domain<T: Scalar>(op: DomainOp, argument: T) -> EvalError {
    EvalError::Domain(EvalDomainError {
        op,
        argument: argument.as_f64(),
        path: NodePath::root(),
    })
}

fn finite<T: Scalar>(v: T) -> Result<T, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite {
            value: v.as_f64(),
            path: NodePath::root(),
        })
    }
}

/// `base^exponent` over the reals.
///
/// Integer exponents with magnitude ≤ 64 use repeated squaring (exact for
/// exactly-representable powers); other exponents go through `exp·log`,
/// with the sign carried separately for negative bases and large integer
/// exponents. A negative base with a non-integer exponent is a domain
/// error, not a NaN.
fn pow<T: Scalar>(base: T, exponent: T) -> Result<T, EvalError> {
    let integral = exponent.fract() == T::zero();
    if integral && exponent.abs() <= T::from_f64_lossy(SQUARING_LIMIT) {
        let k = exponent
            .to_i32()
            .expect("integer exponent within squaring range");
        return Ok(pow_by_squaring(base, k));
    }
    if base > T::zero() {
        return Ok((exponent * base.ln()).exp());
    }
    if base == T::zero() {
        return if exponent > T::zero() {
            Ok(T::zero())
        } else {
            // 0 raised to a negative power: report the infinity.
            Err(EvalError::NonFinite {
                value: f64::INFINITY,
                path: NodePath::root(),
            })
        };
    }
    if integral {
        // negative base, huge integer exponent: |base|^k with the parity sign
        let magnitude = (exponent * base.abs().ln()).exp();
        let even = (exponent / (T::one() + T::one())).fract() == T::zero();
        Ok(if even { magnitude } else { -magnitude })
    } else {
        Err(domain(DomainOp::Pow, base))
    }
}

fn pow_by_squaring<T: Scalar>(base: T, k: i32) -> T {
    let mut result = T::one();
    let mut factor = base;
    let mut remaining = k.unsigned_abs();
    while remaining > 0 {
        if remaining & 1 == 1 {
            result = result * factor;
        }
        remaining >>= 1;
        if remaining > 0 {
            factor = factor * factor;
        }
    }
    if k < 0 {
        T::one() / result
    } else {
        result
    }
}
