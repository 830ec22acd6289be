//! Polynomial expression grammar.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' nat)?
//! base   := nat | var | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication. Division is only allowed by nonzero
//! constants, which is what lets printed rational coefficients re-parse.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Nat(BigInt),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Div(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            out.push((start, Tok::Nat(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { offset: i, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = if self.eat('-') {
            PolyExpr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = PolyExpr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        let base = self.base()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Nat(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(PolyExpr::Pow(Box::new(base), e))
                }
                _ => self.err("malformed exponent: expected a natural number literal"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<PolyExpr> {
        match self.peek().cloned() {
            Some(Tok::Nat(n)) => {
                self.pos += 1;
                Ok(PolyExpr::Nat(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(PolyExpr::Var(s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl PolyExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let toks = lex(text)?;
        let mut p = Parser { toks, pos: 0, len: text.len() };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return p.err("trailing input (juxtaposition is not multiplication)");
        }
        Ok(e)
    }

    /// Evaluates the tree in `ring`.
    pub fn eval(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        Ok(match self {
            PolyExpr::Nat(n) => Polynomial::constant(ring, ring.field().try_normalize(Coeff::from_integer(n.clone()))?),
            PolyExpr::Var(v) => Polynomial::var_named(ring, v)?,
            PolyExpr::Neg(a) => -a.eval(ring)?,
            PolyExpr::Add(a, b) => a.eval(ring)? + b.eval(ring)?,
            PolyExpr::Sub(a, b) => a.eval(ring)? - b.eval(ring)?,
            PolyExpr::Mul(a, b) => a.eval(ring)? * b.eval(ring)?,
            PolyExpr::Div(a, b) => {
                let num = a.eval(ring)?;
                let den = b.eval(ring)?;
                let c = den
                    .constant_value()
                    .ok_or_else(|| Error::invalid("division by a non-constant polynomial"))?;
                if c.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                num.scale(&ring.field().inv(&c)?)
            }
            PolyExpr::Pow(a, e) => a.eval(ring)?.pow(*e),
        })
    }
}

pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    PolyExpr::parse(text)?.eval(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::MonomialOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(FieldSpec::Rationals, &["x", "y"], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn parses_evident_polynomials() {
        let r = ring();
        assert_eq!(parse_polynomial("x^2 + 2*x*y", &r).unwrap().to_string(), "x^2 + 2*x*y");
        assert_eq!(parse_polynomial("(x+1)^3", &r).unwrap().to_string(), "x^3 + 3*x^2 + 3*x + 1");
        assert_eq!(parse_polynomial("-3/2*x + 1", &r).unwrap().to_string(), "-3/2*x + 1");
    }

    #[test]
    fn unknown_variable() {
        assert_eq!(parse_polynomial("x + z", &ring()), Err(Error::UnknownVariable("z".into())));
    }

    #[test]
    fn malformed_inputs() {
        let r = ring();
        assert!(matches!(parse_polynomial("x^y", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("2x", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("(x", &r), Err(Error::Parse { .. })));
        assert!(parse_polynomial("x/y", &r).is_err());
    }

    #[test]
    fn prime_field_reduction() {
        let r = PolyRing::new(FieldSpec::Prime(3), &["x"], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(parse_polynomial("4*x + 3", &r).unwrap().to_string(), "x");
        assert_eq!(parse_polynomial("x/3", &r), Err(Error::DivisionByZero));
    }
}
