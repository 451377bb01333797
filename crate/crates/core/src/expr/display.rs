//! Printing expressions back to grammar text.
//!
//! The printer inserts parentheses from operator precedence so that
//! `parse(e.to_string())` reproduces `e` structurally. Negative constants
//! print as literals (`-3.5`), which the parser folds back into a
//! constant; an explicit negation of a literal prints as `-(3.5)` to
//! keep the two shapes distinguishable.

use std::fmt;

use super::{BinaryOp, Expr, NamedConstant, UnaryOp};
use crate::scalar::Scalar;

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn prec<T: Scalar>(e: &Expr<T>) -> u8 {
    match e {
        Expr::Constant(c) if c.is_sign_negative() => PREC_NEG,
        Expr::Unary(UnaryOp::Neg, _) => PREC_NEG,
        Expr::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => PREC_ADD,
        Expr::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => PREC_MUL,
        Expr::Binary(BinaryOp::Pow, ..) => PREC_POW,
        _ => PREC_ATOM,
    }
}

impl fmt::Display for UnaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Tan => "tan",
            UnaryOp::Atan => "atan",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Sinh => "sinh",
            UnaryOp::Cosh => "cosh",
            UnaryOp::Abs => "abs",
        })
    }
}

impl fmt::Display for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        })
    }
}

impl<T: Scalar> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Constant(c) => write!(f, "{c}"),
            Expr::NamedConstant(NamedConstant::Pi) => f.write_str("pi"),
            Expr::NamedConstant(NamedConstant::E) => f.write_str("e"),
            Expr::Variable => f.write_str("x"),
            Expr::Unary(UnaryOp::Neg, child) => {
                f.write_str("-")?;
                // parenthesize literals so "-(3.5)" stays an explicit
                // negation instead of folding into a constant
                let parens = prec(child.as_ref()) < PREC_NEG
                    || matches!(child.as_ref(), Expr::Constant(_));
                write_child(f, child, parens)
            }
            Expr::Unary(op, child) => write!(f, "{op}({child})"),
            Expr::Binary(op, l, r) => {
                let (lp, rp) = match op {
                    // right side re-associates at equal precedence; a
                    // leading minus on the right gets cosmetic parens
                    BinaryOp::Add | BinaryOp::Sub => {
                        let rp = prec(r.as_ref()) == PREC_ADD || prec(r.as_ref()) == PREC_NEG;
                        (prec(l.as_ref()) < PREC_ADD, rp)
                    }
                    BinaryOp::Mul | BinaryOp::Div => {
                        (prec(l.as_ref()) < PREC_MUL, prec(r.as_ref()) <= PREC_NEG)
                    }
                    // ^ is right-associative and binds tighter than unary
                    // minus, so any non-atom base needs parens
                    BinaryOp::Pow => {
                        (prec(l.as_ref()) <= PREC_POW, prec(r.as_ref()) <= PREC_NEG)
                    }
                };
                write_child(f, l, lp)?;
                write!(f, "{op}")?;
                write_child(f, r, rp)
            }
        }
    }
}

fn write_child<T: Scalar>(
    f: &mut fmt::Formatter<'_>,
    child: &Expr<T>,
    parens: bool,
) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;
    use crate::Expr64;

    fn roundtrip(e: &Expr64) {
        let text = e.to_string();
        let back: Expr64 = parse(&text).unwrap_or_else(|err| {
            panic!("`{text}` failed to re-parse: {err}");
        });
        assert_eq!(&back, e, "`{text}` re-parsed to a different tree");
    }

    #[test]
    fn parse_format_examples() {
        let e: Expr64 = parse("x^2/2").unwrap();
        assert_eq!(e.to_string(), "x^2/2");
        roundtrip(&e);

        let c = Expr64::constant(38.0 / 3.0);
        assert_eq!(c.to_string(), "12.666666666666666");
        roundtrip(&c);
    }

    #[test]
    fn problem_three_expression_roundtrips() {
        let text = "log(x^2+1)/8 + 7*atan(x)/4 - x^2/4 + 3*x/2 - 5/(2*(x+2)) - 9*log(x+2)/2";
        let e: Expr64 = parse(text).unwrap();
        roundtrip(&e);
    }

    #[test]
    fn tricky_shapes_roundtrip() {
        let xs = [
            "-x^2",
            "(-3)^x",
            "x^-2",
            "2*(-3.5)",
            "1-(2-x)",
            "8/(4/x)",
            "(x^2)^0.5",
            "2^3^2",
            "-(3.5)",
            "x--3",
            "sqrt(x)^2",
            "-(x*3)",
        ];
        for text in xs {
            roundtrip(&parse(text).unwrap());
        }
    }

    #[test]
    fn negation_shapes_are_distinguished() {
        // a folded negative literal and an explicit negation print differently
        assert_eq!(Expr64::constant(-3.5).to_string(), "-3.5");
        assert_eq!((-Expr64::constant(3.5)).to_string(), "-(3.5)");
        roundtrip(&Expr64::constant(-3.5));
        roundtrip(&(-Expr64::constant(3.5)));
        roundtrip(&(-(-Expr64::constant(3.5))));
        roundtrip(&(-Expr64::variable()));
    }

    #[test]
    fn negative_base_power_needs_parens() {
        let e = Expr64::constant(-2.0).pow(Expr64::constant(2.0));
        assert_eq!(e.to_string(), "(-2)^2");
        assert_eq!(e.eval(0.0).unwrap(), 4.0);
        roundtrip(&e);
    }
}
