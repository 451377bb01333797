//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | power
//! power  := atom ("^" factor)?
//! atom   := number | "x" | "pi" | "e" | func "(" expr ")" | "(" expr ")"
//! func   := sin | cos | tan | atan | exp | log | sqrt | sinh | cosh | abs
//! ```
//!
//! `^` binds tightest and is right-associative; unary minus binds looser
//! than `^`, so `-x^2` is `-(x^2)`. Whitespace is insignificant. Numbers
//! are decimal literals, optionally with an exponent part (`2.5e-3`); a
//! bare `e` is Euler's constant.

use super::error::ParseError;
use super::{BinaryOp, Expr, NamedConstant, UnaryOp};
use crate::scalar::Scalar;

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok<'a> {
    Num(f64),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

/// Parses `text` into an expression tree.
pub fn parse<T: Scalar>(text: &str) -> Result<Expr<T>, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        end_offset: text.len(),
    };
    let expr = p.expr(0)?;
    match p.peek() {
        None => Ok(expr),
        Some((_, off)) => Err(ParseError::Syntax {
            offset: off,
            message: "unexpected trailing input".into(),
        }),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok<'_>, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => push_sym(&mut tokens, Tok::Plus, &mut i),
            b'-' => push_sym(&mut tokens, Tok::Minus, &mut i),
            b'*' => push_sym(&mut tokens, Tok::Star, &mut i),
            b'/' => push_sym(&mut tokens, Tok::Slash, &mut i),
            b'^' => push_sym(&mut tokens, Tok::Caret, &mut i),
            b'(' => push_sym(&mut tokens, Tok::LParen, &mut i),
            b')' => push_sym(&mut tokens, Tok::RParen, &mut i),
            b'0'..=b'9' | b'.' => {
                let start = i;
                let value = lex_number(bytes, &mut i).ok_or_else(|| ParseError::Syntax {
                    offset: start,
                    message: "malformed number".into(),
                })?;
                tokens.push((Tok::Num(value), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Tok::Ident(&text[start..i]), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: i,
                    message: format!("unexpected character `{}`", &text[i..][..1]),
                })
            }
        }
    }
    Ok(tokens)
}

fn push_sym<'a>(tokens: &mut Vec<(Tok<'a>, usize)>, tok: Tok<'a>, i: &mut usize) {
    tokens.push((tok, *i));
    *i += 1;
}

fn lex_number(bytes: &[u8], i: &mut usize) -> Option<f64> {
    let start = *i;
    let mut saw_digit = false;
    while *i < bytes.len() && bytes[*i].is_ascii_digit() {
        *i += 1;
        saw_digit = true;
    }
    if *i < bytes.len() && bytes[*i] == b'.' {
        *i += 1;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
            saw_digit = true;
        }
    }
    if !saw_digit {
        return None;
    }
    // Exponent part only when unambiguously numeric: `2e3`, `2e-3`. A
    // following letter keeps `e` as the named constant (`2e` is `2 e`,
    // which the parser then rejects for lack of an operator).
    if *i < bytes.len() && (bytes[*i] == b'e' || bytes[*i] == b'E') {
        let mut j = *i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        let exp_digits = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        let followed_by_word = j < bytes.len()
            && (bytes[j].is_ascii_alphabetic() || bytes[j] == b'_' || bytes[j] == b'.');
        if j > exp_digits && !followed_by_word {
            *i = j;
        }
    }
    std::str::from_utf8(&bytes[start..*i])
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
}

struct Parser<'a, 't> {
    tokens: &'a [(Tok<'t>, usize)],
    pos: usize,
    end_offset: usize,
}

impl Parser<'_, '_> {
    fn expr<T: Scalar>(&mut self, depth: usize) -> Result<Expr<T>, ParseError> {
        self.check_depth(depth)?;
        let mut lhs = self.term(depth + 1)?;
        loop {
            match self.peek_tok() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term(depth + 1)?;
                    lhs = Expr::binary(BinaryOp::Add, lhs, rhs);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term(depth + 1)?;
                    lhs = Expr::binary(BinaryOp::Sub, lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term<T: Scalar>(&mut self, depth: usize) -> Result<Expr<T>, ParseError> {
        self.check_depth(depth)?;
        let mut lhs = self.factor(depth + 1)?;
        loop {
            match self.peek_tok() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor(depth + 1)?;
                    lhs = Expr::binary(BinaryOp::Mul, lhs, rhs);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor(depth + 1)?;
                    lhs = Expr::binary(BinaryOp::Div, lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor<T: Scalar>(&mut self, depth: usize) -> Result<Expr<T>, ParseError> {
        self.check_depth(depth)?;
        if self.peek_tok() == Some(Tok::Minus) {
            // A minus directly on a numeric literal folds into a negative
            // constant, unless `^` follows (then `-3^2` stays -(3^2)).
            if let Some((Tok::Num(v), _)) = self.tokens.get(self.pos + 1).copied() {
                if self.tokens.get(self.pos + 2).map(|t| t.0) != Some(Tok::Caret) {
                    self.pos += 2;
                    return Ok(Expr::Constant(T::from_f64_lossy(-v)));
                }
            }
            self.pos += 1;
            let inner = self.factor(depth + 1)?;
            return Ok(Expr::unary(UnaryOp::Neg, inner));
        }
        self.power(depth + 1)
    }

    fn power<T: Scalar>(&mut self, depth: usize) -> Result<Expr<T>, ParseError> {
        self.check_depth(depth)?;
        let base = self.atom(depth + 1)?;
        if self.peek_tok() == Some(Tok::Caret) {
            self.pos += 1;
            let exponent = self.factor(depth + 1)?;
            return Ok(Expr::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom<T: Scalar>(&mut self, depth: usize) -> Result<Expr<T>, ParseError> {
        self.check_depth(depth)?;
        let (tok, offset) = match self.peek() {
            Some(t) => t,
            None => {
                return Err(ParseError::Syntax {
                    offset: self.end_offset,
                    message: "unexpected end of input".into(),
                })
            }
        };
        match tok {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(Expr::Constant(T::from_f64_lossy(v)))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr(depth + 1)?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match name {
                    "x" => Ok(Expr::Variable),
                    "pi" => Ok(Expr::NamedConstant(NamedConstant::Pi)),
                    "e" => Ok(Expr::NamedConstant(NamedConstant::E)),
                    _ => {
                        let op = function_op(name).ok_or_else(|| {
                            ParseError::UnknownIdentifier {
                                name: name.into(),
                                offset,
                            }
                        })?;
                        self.expect_lparen(name)?;
                        let arg = self.expr(depth + 1)?;
                        self.expect_rparen()?;
                        Ok(Expr::unary(op, arg))
                    }
                }
            }
            other => Err(ParseError::Syntax {
                offset,
                message: format!("unexpected token `{}`", token_name(other)),
            }),
        }
    }

    fn check_depth(&self, depth: usize) -> Result<(), ParseError> {
        if depth > MAX_DEPTH {
            Err(ParseError::Syntax {
                offset: self.peek().map(|(_, o)| o).unwrap_or(self.end_offset),
                message: "expression too deeply nested".into(),
            })
        } else {
            Ok(())
        }
    }

    fn expect_lparen(&mut self, func: &str) -> Result<(), ParseError> {
        if self.peek_tok() == Some(Tok::LParen) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                offset: self.peek().map(|(_, o)| o).unwrap_or(self.end_offset),
                message: format!("expected `(` after `{func}`"),
            })
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if self.peek_tok() == Some(Tok::RParen) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                offset: self.peek().map(|(_, o)| o).unwrap_or(self.end_offset),
                message: "expected `)`".into(),
            })
        }
    }
}

impl<'t> Parser<'_, 't> {
    fn peek(&self) -> Option<(Tok<'t>, usize)> {
        self.tokens.get(self.pos).copied()
    }

    fn peek_tok(&self) -> Option<Tok<'t>> {
        self.peek().map(|(t, _)| t)
    }
}

fn function_op(name: &str) -> Option<UnaryOp> {
    Some(match name {
        "sin" => UnaryOp::Sin,
        "cos" => UnaryOp::Cos,
        "tan" => UnaryOp::Tan,
        "atan" => UnaryOp::Atan,
        "exp" => UnaryOp::Exp,
        "log" => UnaryOp::Log,
        "sqrt" => UnaryOp::Sqrt,
        "sinh" => UnaryOp::Sinh,
        "cosh" => UnaryOp::Cosh,
        "abs" => UnaryOp::Abs,
        _ => return None,
    })
}

fn token_name(tok: Tok<'_>) -> &'static str {
    match tok {
        Tok::Num(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Slash => "/",
        Tok::Caret => "^",
        Tok::LParen => "(",
        Tok::RParen => ")",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Expr64;

    fn p(s: &str) -> Expr64 {
        parse(s).unwrap()
    }

    #[test]
    fn atoms() {
        assert_eq!(p("x"), Expr::Variable);
        assert_eq!(p("pi"), Expr64::pi());
        assert_eq!(p("e"), Expr64::e());
        assert_eq!(p("2.5"), Expr::Constant(2.5));
        assert_eq!(p(".5"), Expr::Constant(0.5));
        assert_eq!(p("1e-3"), Expr::Constant(1e-3));
    }

    #[test]
    fn semicubical_structure() {
        // 2*x^(3/2)/3 parses as ((2 * x^(3/2)) / 3) with the exponent a
        // quotient of constants.
        let expected = Expr64::constant(2.0)
            * Expr64::variable().pow(Expr64::constant(3.0) / Expr64::constant(2.0))
            / Expr64::constant(3.0);
        assert_eq!(p("2*x^(3/2)/3"), expected);
    }

    #[test]
    fn function_calls() {
        assert_eq!(p("cosh(x)"), Expr64::variable().cosh());
        assert_eq!(p("log(x)"), Expr64::variable().log());
    }

    #[test]
    fn precedence_and_associativity() {
        // unary minus binds looser than ^
        assert_eq!(p("-x^2"), -(Expr64::variable().pow(Expr64::constant(2.0))));
        // ^ is right-associative
        assert_eq!(
            p("2^3^2"),
            Expr64::constant(2.0)
                .pow(Expr64::constant(3.0).pow(Expr64::constant(2.0)))
        );
        // left-associative */ and +-
        assert_eq!(
            p("1-2-3"),
            (Expr64::constant(1.0) - Expr64::constant(2.0)) - Expr64::constant(3.0)
        );
        assert_eq!(
            p("8/4/2"),
            (Expr64::constant(8.0) / Expr64::constant(4.0)) / Expr64::constant(2.0)
        );
        // a*b+c groups the product first
        assert_eq!(
            p("2*x+1"),
            Expr64::constant(2.0) * Expr64::variable() + Expr64::constant(1.0)
        );
    }

    #[test]
    fn negative_literal_folding() {
        assert_eq!(p("-3.5"), Expr::Constant(-3.5));
        // ...but not in front of a power: -3^2 = -(3^2)
        assert_eq!(
            p("-3^2"),
            -(Expr64::constant(3.0).pow(Expr64::constant(2.0)))
        );
        // parenthesized literal stays an explicit negation
        assert_eq!(p("-(3.5)"), -Expr64::constant(3.5));
        assert_eq!(p("x^-2"), Expr64::variable().pow(Expr64::constant(-2.0)));
        assert_eq!(
            p("2*-3.5"),
            Expr64::constant(2.0) * Expr64::constant(-3.5)
        );
    }

    #[test]
    fn errors_carry_offsets() {
        match parse::<f64>("2*+x") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse::<f64>("2*y") {
            Err(ParseError::UnknownIdentifier { name, offset }) => {
                assert_eq!(name, "y");
                assert_eq!(offset, 2);
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
        assert!(parse::<f64>("sin x").is_err());
        assert!(parse::<f64>("(1+2").is_err());
        assert!(parse::<f64>("1 2").is_err());
        assert!(parse::<f64>("").is_err());
    }

    #[test]
    fn scientific_exponent_vs_euler_constant() {
        assert_eq!(p("2e3"), Expr::Constant(2000.0));
        assert_eq!(p("2*e"), Expr64::constant(2.0) * Expr64::e());
        // `2e` is a number followed by the constant with no operator
        assert!(parse::<f64>("2e").is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(p("  2 * x ^ ( 3 / 2 ) / 3 "), p("2*x^(3/2)/3"));
    }
}
