//! Expressions in one real variable `x`.
//!
//! [`Expr`] is an immutable tree: constants, the named constants `pi`
//! and `e`, the variable `x`, unary operations and binary operations.
//! Trees are built with [`parse`], with the operator overloads on
//! `Expr`, or with the named constructors; they are evaluated, symbolically
//! differentiated, simplified and printed by the methods below. All
//! operations are pure, so values can be shared freely across threads.
//!
//! `log` is the natural logarithm throughout.

mod diff;
mod display;
mod error;
mod eval;
mod parser;
mod simplify;

pub use error::{DiffError, DomainOp, EvalDomainError, EvalError, NodePath, ParseError};
pub use parser::parse;

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::scalar::Scalar;

/// Unary operations of the expression language.
///
/// `abs` is evaluable but not differentiable; [`Expr::differentiate`]
/// reports it instead of guessing a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    Atan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
    Abs,
}

/// Binary operations of the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// The named constants of the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedConstant {
    Pi,
    E,
}

/// An expression tree over the single variable `x`.
///
/// Structural equality (`==`) is the equality used by tests and by the
/// `parse`/`Display` round-trip guarantee.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<T> {
    Constant(T),
    NamedConstant(NamedConstant),
    Variable,
    Unary(UnaryOp, Box<Expr<T>>),
    Binary(BinaryOp, Box<Expr<T>>, Box<Expr<T>>),
}

impl<T: Scalar> Expr<T> {
    pub fn constant(v: T) -> Self {
        Expr::Constant(v)
    }

    pub fn variable() -> Self {
        Expr::Variable
    }

    pub fn pi() -> Self {
        Expr::NamedConstant(NamedConstant::Pi)
    }

    pub fn e() -> Self {
        Expr::NamedConstant(NamedConstant::E)
    }

    pub fn unary(op: UnaryOp, child: Expr<T>) -> Self {
        Expr::Unary(op, Box::new(child))
    }

    pub fn binary(op: BinaryOp, left: Expr<T>, right: Expr<T>) -> Self {
        Expr::Binary(op, Box::new(left), Box::new(right))
    }

    pub fn sin(self) -> Self {
        Expr::unary(UnaryOp::Sin, self)
    }

    pub fn cos(self) -> Self {
        Expr::unary(UnaryOp::Cos, self)
    }

    pub fn tan(self) -> Self {
        Expr::unary(UnaryOp::Tan, self)
    }

    pub fn atan(self) -> Self {
        Expr::unary(UnaryOp::Atan, self)
    }

    pub fn exp(self) -> Self {
        Expr::unary(UnaryOp::Exp, self)
    }

    /// Natural logarithm.
    pub fn log(self) -> Self {
        Expr::unary(UnaryOp::Log, self)
    }

    pub fn sqrt(self) -> Self {
        Expr::unary(UnaryOp::Sqrt, self)
    }

    pub fn sinh(self) -> Self {
        Expr::unary(UnaryOp::Sinh, self)
    }

    pub fn cosh(self) -> Self {
        Expr::unary(UnaryOp::Cosh, self)
    }

    pub fn abs(self) -> Self {
        Expr::unary(UnaryOp::Abs, self)
    }

    pub fn pow(self, exponent: Expr<T>) -> Self {
        Expr::binary(BinaryOp::Pow, self, exponent)
    }

    /// True when the tree contains no occurrence of the variable.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Constant(_) | Expr::NamedConstant(_) => true,
            Expr::Variable => false,
            Expr::Unary(_, c) => c.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    /// Replaces every occurrence of the variable with `replacement`.
    pub fn substitute(&self, replacement: &Expr<T>) -> Expr<T> {
        match self {
            Expr::Variable => replacement.clone(),
            Expr::Constant(_) | Expr::NamedConstant(_) => self.clone(),
            Expr::Unary(op, c) => Expr::unary(*op, c.substitute(replacement)),
            Expr::Binary(op, l, r) => {
                Expr::binary(*op, l.substitute(replacement), r.substitute(replacement))
            }
        }
    }
}

impl<T: Scalar> Add for Expr<T> {
    type Output = Expr<T>;
    fn add(self, rhs: Expr<T>) -> Expr<T> {
        Expr::binary(BinaryOp::Add, self, rhs)
    }
}

impl<T: Scalar> Sub for Expr<T> {
    type Output = Expr<T>;
    fn sub(self, rhs: Expr<T>) -> Expr<T> {
        Expr::binary(BinaryOp::Sub, self, rhs)
    }
}

impl<T: Scalar> Mul for Expr<T> {
    type Output = Expr<T>;
    fn mul(self, rhs: Expr<T>) -> Expr<T> {
        Expr::binary(BinaryOp::Mul, self, rhs)
    }
}

impl<T: Scalar> Div for Expr<T> {
    type Output = Expr<T>;
    fn div(self, rhs: Expr<T>) -> Expr<T> {
        Expr::binary(BinaryOp::Div, self, rhs)
    }
}

impl<T: Scalar> Neg for Expr<T> {
    type Output = Expr<T>;
    fn neg(self) -> Expr<T> {
        Expr::unary(UnaryOp::Neg, self)
    }
}

impl<T: Scalar> FromStr for Expr<T> {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}
