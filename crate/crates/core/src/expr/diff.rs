//! Symbolic differentiation with respect to `x`.

use super::error::DiffError;
use super::{BinaryOp, Expr, UnaryOp};
use crate::scalar::Scalar;

impl<T: Scalar> Expr<T> {
    /// Symbolic derivative `d/dx`, returned in simplified form.
    ///
    /// Wherever both sides are defined, the result evaluates to the
    /// analytic derivative; applying it twice yields the second
    /// derivative. `abs` is rejected rather than differentiated
    /// piecewise.
    pub fn differentiate(&self) -> Result<Expr<T>, DiffError> {
        Ok(self.derivative_raw()?.simplify())
    }

    fn derivative_raw(&self) -> Result<Expr<T>, DiffError> {
        let one = || Expr::Constant(T::one());
        match self {
            Expr::Constant(_) | Expr::NamedConstant(_) => Ok(Expr::Constant(T::zero())),
            Expr::Variable => Ok(one()),
            Expr::Unary(op, child) => {
                let u = child.as_ref();
                let du = u.derivative_raw()?;
                let out = match op {
                    UnaryOp::Neg => -du,
                    UnaryOp::Sin => u.clone().cos() * du,
                    UnaryOp::Cos => -(u.clone().sin()) * du,
                    UnaryOp::Tan => du / u.clone().cos().pow(two()),
                    UnaryOp::Atan => du / (one() + u.clone().pow(two())),
                    UnaryOp::Exp => u.clone().exp() * du,
                    UnaryOp::Log => du / u.clone(),
                    UnaryOp::Sqrt => du / (two() * u.clone().sqrt()),
                    UnaryOp::Sinh => u.clone().cosh() * du,
                    UnaryOp::Cosh => u.clone().sinh() * du,
                    UnaryOp::Abs => return Err(DiffError::NonDifferentiable { op: *op }),
                };
                Ok(out)
            }
            Expr::Binary(op, left, right) => {
                let (u, v) = (left.as_ref(), right.as_ref());
                match op {
                    BinaryOp::Add => Ok(u.derivative_raw()? + v.derivative_raw()?),
                    BinaryOp::Sub => Ok(u.derivative_raw()? - v.derivative_raw()?),
                    BinaryOp::Mul => {
                        if u.is_constant() {
                            Ok(u.clone() * v.derivative_raw()?)
                        } else if v.is_constant() {
                            Ok(u.derivative_raw()? * v.clone())
                        } else {
                            Ok(u.derivative_raw()? * v.clone() + u.clone() * v.derivative_raw()?)
                        }
                    }
                    BinaryOp::Div => {
                        if v.is_constant() {
                            Ok(u.derivative_raw()? / v.clone())
                        } else {
                            let num = u.derivative_raw()? * v.clone()
                                - u.clone() * v.derivative_raw()?;
                            Ok(num / v.clone().pow(two()))
                        }
                    }
                    BinaryOp::Pow => {
                        if v.is_constant() {
                            // d(u^c) = c·u^(c-1)·u'
                            let exponent = v.clone() - Expr::Constant(T::one());
                            Ok(v.clone() * u.clone().pow(exponent) * u.derivative_raw()?)
                        } else if u.is_constant() {
                            // d(c^v) = c^v·log(c)·v'
                            Ok(u.clone().pow(v.clone())
                                * u.clone().log()
                                * v.derivative_raw()?)
                        } else {
                            // d(u^v) = u^v·(v'·log(u) + v·u'/u)
                            let bracket = v.derivative_raw()? * u.clone().log()
                                + v.clone() * u.derivative_raw()? / u.clone();
                            Ok(u.clone().pow(v.clone()) * bracket)
                        }
                    }
                }
            }
        }
    }
}

fn two<T: Scalar>() -> Expr<T> {
    Expr::Constant(T::from_f64_lossy(2.0))
}
