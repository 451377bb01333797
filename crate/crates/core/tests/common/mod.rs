//! Shared generators for the property suites.
#![allow(dead_code)] // each test target uses its own subset

use arclen_core::{BinaryOp, Expr, Expr64, UnaryOp};
use proptest::prelude::*;

/// Any syntactically valid tree, for round-trip and simplification
/// properties. Constants stay in a plain range; no evaluation is implied.
pub fn arb_any_expr() -> impl Strategy<Value = Expr64> {
    let leaf = prop_oneof![
        2 => Just(Expr64::variable()),
        1 => Just(Expr64::pi()),
        1 => Just(Expr64::e()),
        3 => (-1.0e6..1.0e6_f64).prop_map(Expr::Constant),
        2 => prop::sample::select(vec![0.0_f64, 1.0, -1.0, 0.5, -2.0, 3.0])
            .prop_map(Expr::Constant),
    ];
    leaf.prop_recursive(6, 48, 3, |inner| {
        let unary = prop::sample::select(vec![
            UnaryOp::Neg,
            UnaryOp::Sin,
            UnaryOp::Cos,
            UnaryOp::Tan,
            UnaryOp::Atan,
            UnaryOp::Exp,
            UnaryOp::Log,
            UnaryOp::Sqrt,
            UnaryOp::Sinh,
            UnaryOp::Cosh,
            UnaryOp::Abs,
        ]);
        let binary = prop::sample::select(vec![
            BinaryOp::Add,
            BinaryOp::Sub,
            BinaryOp::Mul,
            BinaryOp::Div,
            BinaryOp::Pow,
        ]);
        prop_oneof![
            (unary, inner.clone()).prop_map(|(op, c)| Expr::unary(op, c)),
            (binary, inner.clone(), inner).prop_map(|(op, l, r)| Expr::binary(op, l, r)),
        ]
    })
}

/// Domain where the safe family below is smooth and tame.
pub const SAFE_DOMAIN: (f64, f64) = (0.2, 1.5);

fn small_poly(max_degree: usize, coeff: f64) -> impl Strategy<Value = Expr64> {
    prop::collection::vec(-coeff..coeff, 1..=max_degree + 1).prop_map(|coeffs| {
        // Horner form keeps the tree small and evaluation stable
        let mut it = coeffs.into_iter().rev();
        let mut acc = Expr64::constant(it.next().unwrap());
        for c in it {
            acc = acc * Expr64::variable() + Expr64::constant(c);
        }
        acc
    })
}

/// Everywhere-smooth expressions with moderate values and derivatives on
/// [`SAFE_DOMAIN`]: polynomials, gently-fed transcendentals, and sums and
/// scaled products of those. Suitable for finite-difference comparisons.
pub fn arb_safe_expr() -> impl Strategy<Value = Expr64> {
    fn wrap(p: Expr64, which: usize) -> Expr64 {
        match which {
            0 => p.sin(),
            1 => p.cos(),
            2 => p.atan(),
            3 => p.exp(),
            4 => p.sinh(),
            5 => p.cosh(),
            // sqrt(1 + p²) and log(2 + p²) stay inside their domains
            6 => (Expr64::constant(1.0) + p.pow(Expr64::constant(2.0))).sqrt(),
            _ => (Expr64::constant(2.0) + p.pow(Expr64::constant(2.0))).log(),
        }
    }
    let wrapped = || (small_poly(2, 1.5), 0..8_usize).prop_map(|(p, w)| wrap(p, w));
    let term = prop_oneof![
        3 => small_poly(4, 3.0),
        3 => wrapped(),
        2 => (small_poly(2, 2.0), wrapped()).prop_map(|(p, w)| p * w),
    ];
    prop_oneof![
        2 => term.clone(),
        1 => (term.clone(), term).prop_map(|(a, b)| a + b),
    ]
}

/// 100 evenly spread interior points of `[lo, hi]`.
pub fn interior_grid(lo: f64, hi: f64) -> Vec<f64> {
    (0..100)
        .map(|i| lo + (i as f64 + 0.5) * (hi - lo) / 100.0)
        .collect()
}
