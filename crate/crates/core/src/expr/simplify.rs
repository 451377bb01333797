//! Value-preserving simplification.

use super::{BinaryOp, Expr, UnaryOp};
use crate::scalar::Scalar;

impl<T: Scalar> Expr<T> {
    /// Simplifies the tree without changing its value anywhere both the
    /// input and the output are defined.
    ///
    /// Guaranteed rewrites: folding of constant subtrees, `u·0 → 0`,
    /// `u·1 → u`, `u+0 → u`, `u^1 → u`, `u^0 → 1`, and removal of double
    /// negation. No canonical form is promised beyond that.
    pub fn simplify(&self) -> Expr<T> {
        match self {
            Expr::Constant(_) | Expr::NamedConstant(_) | Expr::Variable => self.clone(),
            Expr::Unary(op, c) => rewrite(Expr::unary(*op, c.simplify())),
            Expr::Binary(op, l, r) => rewrite(Expr::binary(*op, l.simplify(), r.simplify())),
        }
    }
}

fn rewrite<T: Scalar>(mut node: Expr<T>) -> Expr<T> {
    // Each rule strictly shrinks the tree or establishes a form no other
    // rule touches, so the loop terminates; the cap is a backstop.
    for _ in 0..64 {
        match rewrite_once(&node) {
            Some(next) => node = next,
            None => return node,
        }
    }
    node
}

fn rewrite_once<T: Scalar>(node: &Expr<T>) -> Option<Expr<T>> {
    // Fold any non-leaf constant subtree that evaluates cleanly.
    if !matches!(
        node,
        Expr::Constant(_) | Expr::NamedConstant(_) | Expr::Variable
    ) && node.is_constant()
    {
        if let Ok(v) = node.eval(T::zero()) {
            return Some(Expr::Constant(v));
        }
    }

    match node {
        Expr::Unary(UnaryOp::Neg, c) => match c.as_ref() {
            Expr::Unary(UnaryOp::Neg, inner) => Some(inner.as_ref().clone()),
            _ => None,
        },
        Expr::Binary(op, l, r) => {
            let (l, r) = (l.as_ref(), r.as_ref());
            match op {
                BinaryOp::Add => {
                    if is_zero(l) {
                        Some(r.clone())
                    } else if is_zero(r) {
                        Some(l.clone())
                    } else {
                        None
                    }
                }
                BinaryOp::Sub => {
                    if is_zero(r) {
                        Some(l.clone())
                    } else if is_zero(l) {
                        Some(-r.clone())
                    } else {
                        None
                    }
                }
                BinaryOp::Mul => {
                    if is_zero(l) || is_zero(r) {
                        Some(Expr::Constant(T::zero()))
                    } else if is_one(l) {
                        Some(r.clone())
                    } else if is_one(r) {
                        Some(l.clone())
                    } else if matches!(r, Expr::Constant(_)) && !matches!(l, Expr::Constant(_)) {
                        // canonical order: constant factor first
                        Some(Expr::binary(BinaryOp::Mul, r.clone(), l.clone()))
                    } else if let (Expr::Constant(a), Expr::Binary(BinaryOp::Mul, m1, m2)) = (l, r)
                    {
                        // a·(b·w) → (a·b)·w
                        if let Expr::Constant(b) = m1.as_ref() {
                            Some(Expr::binary(
                                BinaryOp::Mul,
                                Expr::Constant(*a * *b),
                                m2.as_ref().clone(),
                            ))
                        } else {
                            None
                        }
                    } else {
                        None
                    }
                }
                BinaryOp::Div => {
                    if is_one(r) {
                        Some(l.clone())
                    } else if is_zero(l) {
                        Some(Expr::Constant(T::zero()))
                    } else if let (Expr::Binary(BinaryOp::Mul, m1, m2), Expr::Constant(c)) = (l, r)
                    {
                        // (a·w)/c → w when the constants cancel exactly
                        match m1.as_ref() {
                            Expr::Constant(a) if *c != T::zero() && *a / *c == T::one() => {
                                Some(m2.as_ref().clone())
                            }
                            _ => None,
                        }
                    } else {
                        None
                    }
                }
                BinaryOp::Pow => {
                    if is_one(r) {
                        Some(l.clone())
                    } else if is_zero(r) {
                        Some(Expr::Constant(T::one()))
                    } else if let (Expr::Binary(BinaryOp::Pow, base, e1), Expr::Constant(b)) =
                        (l, r)
                    {
                        // (u^a)^b → u^(a·b), sound when b is an integer
                        match e1.as_ref() {
                            Expr::Constant(a) if b.fract() == T::zero() => Some(Expr::binary(
                                BinaryOp::Pow,
                                base.as_ref().clone(),
                                Expr::Constant(*a * *b),
                            )),
                            _ => None,
                        }
                    } else {
                        None
                    }
                }
            }
        }
        _ => None,
    }
}

fn is_zero<T: Scalar>(e: &Expr<T>) -> bool {
    matches!(e, Expr::Constant(c) if *c == T::zero())
}

fn is_one<T: Scalar>(e: &Expr<T>) -> bool {
    matches!(e, Expr::Constant(c) if *c == T::one())
}
