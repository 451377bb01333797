//! Error types of the expression language.

use std::fmt;

use thiserror::Error;

use super::UnaryOp;

/// Path from the root of an expression tree to a node: child indices,
/// `0` for the only/left child, `1` for the right child.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodePath(Vec<usize>);

impl NodePath {
    pub fn root() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Extends the path downward from a parent that reached this node as
    /// child `index`. Used while unwinding an evaluation error.
    pub(crate) fn through_child(mut self, index: usize) -> Self {
        self.0.insert(0, index);
        self
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{idx}")?;
        }
        Ok(())
    }
}

/// The operation that raised a domain error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainOp {
    Log,
    Sqrt,
    Div,
    Pow,
}

impl fmt::Display for DomainOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainOp::Log => "log",
            DomainOp::Sqrt => "sqrt",
            DomainOp::Div => "div",
            DomainOp::Pow => "pow",
        })
    }
}

/// Evaluation hit a point outside an operation's real domain: `log` of a
/// non-positive value, `sqrt` of a negative value, a zero denominator, or
/// a negative base raised to a non-integer exponent.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error: {op} of {argument} at node {path}")]
pub struct EvalDomainError {
    pub op: DomainOp,
    pub argument: f64,
    pub path: NodePath,
}

/// Why an evaluation failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Domain(#[from] EvalDomainError),
    /// An operation on finite inputs produced an infinity (or, defensively,
    /// a NaN); never reported as a silent non-finite value.
    #[error("non-finite result ({value}) at node {path}")]
    NonFinite { value: f64, path: NodePath },
}

impl EvalError {
    pub(crate) fn through_child(self, index: usize) -> Self {
        match self {
            EvalError::Domain(e) => EvalError::Domain(EvalDomainError {
                path: e.path.through_child(index),
                ..e
            }),
            EvalError::NonFinite { value, path } => EvalError::NonFinite {
                value,
                path: path.through_child(index),
            },
        }
    }
}

/// Why a parse failed. Offsets are byte positions into the input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

/// Why symbolic differentiation failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiffError {
    #[error("{op:?} is not differentiable")]
    NonDifferentiable { op: UnaryOp },
}
