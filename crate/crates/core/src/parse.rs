//! Recursive-descent parser for ring element expressions.
//!
//! ```text
//! expr   := ("+"|"-")? term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := base ("^" "-"? nat)?
//! base   := rational | ident | "(" expr ")"
//! rational := int ("/" nat)?
//! ```
//!
//! Negative exponents are only meaningful on Laurent variables; whitespace is
//! ignored and multiplication is never implicit.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VariableSet};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn to_polynomial(&self, vars: &Arc<VariableSet>) -> Result<Polynomial> {
        Ok(match self {
            Expr::Num(c) => Polynomial::constant(vars, c.clone()),
            Expr::Var(name) => Polynomial::var(vars, name)?,
            Expr::Neg(a) => -a.to_polynomial(vars)?,
            Expr::Add(a, b) => a.to_polynomial(vars)?.checked_add(&b.to_polynomial(vars)?)?,
            Expr::Sub(a, b) => a.to_polynomial(vars)?.checked_sub(&b.to_polynomial(vars)?)?,
            Expr::Mul(a, b) => a.to_polynomial(vars)?.checked_mul(&b.to_polynomial(vars)?)?,
            Expr::Pow(a, k) => {
                let base = a.to_polynomial(vars)?;
                if *k >= 0 {
                    base.pow(*k as u32)
                } else {
                    base.laurent_inverse()?.pow(k.unsigned_abs())
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> std::result::Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError { position: pos, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a VariableSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> std::result::Result<T, ParseError> {
        Err(ParseError { position: self.pos(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut acc = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let k = self.nat()?;
        let k = i32::try_from(k).or_else(|_| self.err("exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn nat(&mut self) -> std::result::Result<BigInt, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.at += 1;
                Ok(k)
            }
            _ => self.err("expected a non-negative integer"),
        }
    }

    fn base(&mut self) -> std::result::Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.at += 1;
                if self.eat('/') {
                    let den = self.nat()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    Ok(Expr::Num(Rational::new(num, den)))
                } else {
                    Ok(Expr::Num(Rational::from_integer(num)))
                }
            }
            Some(Tok::Ident(name)) => {
                if self.vars.index_of(&name).is_none() {
                    return self.err(format!("unknown identifier `{name}`"));
                }
                self.at += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `src`, accepting only identifiers declared in `vars`.
pub fn parse_expr(src: &str, vars: &VariableSet) -> std::result::Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len(), vars };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

pub fn parse_polynomial(src: &str, vars: &Arc<VariableSet>) -> Result<Polynomial> {
    parse_expr(src, vars).map_err(Error::from)?.to_polynomial(vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fl() -> Arc<VariableSet> {
        VariableSet::new(["h1", "h2", "q1", "q2"]).unwrap()
    }

    #[test]
    fn accepts_ring_expression() {
        let p = parse_polynomial("h1^2*h2 - q2", &fl()).unwrap();
        assert_eq!(p.render(), "h1^2*h2 - q2");
    }

    #[test]
    fn cube_of_one_minus_y() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        assert_eq!(parse_polynomial("(1 - y)^3", &v).unwrap().render(), "-y^3 + 3*y^2 - 3*y + 1");
    }

    #[test]
    fn unknown_identifier_has_position() {
        let err = parse_expr("h1 + h3", &fl()).unwrap_err();
        assert_eq!(err.position, 5);
        assert!(err.message.contains("h3"));
    }

    #[test]
    fn rejects_implicit_multiplication() {
        assert!(parse_expr("2h1", &fl()).is_err());
        assert!(parse_expr("2 h1", &fl()).is_err());
    }

    #[test]
    fn rationals_and_signs() {
        let p = parse_polynomial("-1/2*h1 + 3/6", &fl()).unwrap();
        assert_eq!(p.render(), "-1/2*h1 + 1/2");
        assert!(parse_expr("1/0", &fl()).is_err());
    }

    #[test]
    fn negative_exponents() {
        let v = VariableSet::laurent(["x"]).unwrap();
        assert_eq!(parse_polynomial("x^-2*x^3", &v).unwrap().render(), "x");
        let w = VariableSet::new(["x"]).unwrap();
        assert!(parse_polynomial("x^-1", &w).is_err());
    }
}
