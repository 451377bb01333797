//! Arc lengths of function graphs by uniform polygonal approximation.
//!
//! The library evaluates the polygonal lengths
//! `L_n = Σ √(Δx² + Δy_k²)` of a curve `y = f(x)` over a closed interval,
//! certifies the approximation with the a-priori bound
//! `|L − L_n| ≤ M(b−a)²/(2n)` (where `M` bounds `|f''|` on the open
//! interval), and integrates the arc-length integrand `√(1 + f'(x)²)`
//! with left-endpoint Euler sums. A small expression language supplies
//! `f`, its symbolic derivatives and printable antiderivatives, and the
//! [`catalog`] module generates and verifies exercises whose arc-length
//! integrals have elementary closed forms.
//!
//! The numeric core is generic over the scalar type through the
//! [`Scalar`] trait (`f32` or `f64`); concrete aliases such as
//! [`Expr64`] are provided at the crate root. Exact rational arithmetic
//! (for the power-expansion reductions in [`catalog`]) uses
//! arbitrary-precision integers and is not scalar-generic.

pub mod catalog;
pub mod expr;
pub mod interval;
pub mod kahan;
pub mod quadrature;
pub mod rectify;
pub mod scalar;

pub use expr::{parse, BinaryOp, Expr, NamedConstant, UnaryOp};
pub use expr::{DiffError, EvalDomainError, EvalError, ParseError};
pub use interval::{Interval, InvalidInterval};
pub use kahan::KahanSum;
pub use scalar::Scalar;

/// Expression over IEEE double-precision scalars.
pub type Expr64 = Expr<f64>;
/// Expression over single-precision scalars.
pub type Expr32 = Expr<f32>;
/// Closed interval with `f64` endpoints.
pub type Interval64 = Interval<f64>;
/// Closed interval with `f32` endpoints.
pub type Interval32 = Interval<f32>;
