//! Text form of polynomials.
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := ['-'] base ('^' nat)?
//! base     := var | rational | '(' expr ')'
//! rational := int ('/' nat)?
//! ```
//!
//! The leading and factor-level minus signs extend the base grammar so that
//! printed polynomials with negative leading coefficients parse back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::polynomial::Polynomial;
use super::ring::RingRef;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    return Err(Error::Syntax {
                        pos: i,
                        msg: "identifier cannot follow a number without `*`".into(),
                    });
                }
                out.push((start, Tok::Num(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{other}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a RingRef,
    _f: std::marker::PhantomData<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Syntax {
                        pos: self.offset(),
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a natural exponent after `^`"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial<F>> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.index_of(&name) {
                    Some(i) => Ok(Polynomial::var_at(self.ring, i)),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut q = BigRational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            q /= BigRational::from_integer(d);
                        }
                        Some(Tok::Num(_)) => return self.err("division by zero"),
                        _ => return self.err("expected a natural denominator after `/`"),
                    }
                }
                let c = F::from_rational(&q).ok_or_else(|| Error::Syntax {
                    pos: self.offset(),
                    msg: format!("literal {q} not representable in the coefficient field"),
                })?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and expands a polynomial over the variables of `ring`.
pub fn parse_poly<F: Field>(text: &str, ring: &RingRef) -> Result<Polynomial<F>> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), ring, _f: std::marker::PhantomData };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PolyRing};
    use crate::Rational;

    fn ring(vars: &[&str]) -> RingRef {
        PolyRing::new(vars, MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn expands_products() {
        let r = ring(&["x", "y"]);
        let p = parse_poly::<Rational>("y^3 + x*y", &r).unwrap();
        assert_eq!(p.nterms(), 2);
        assert_eq!(p.to_string(), "y^3 + x*y");

        let r = ring(&["y1", "y2"]);
        let p = parse_poly::<Rational>("(y1 - y2)*(y1 + y2)", &r).unwrap();
        assert_eq!(p.to_string(), "y1^2 - y2^2");
    }

    #[test]
    fn zero_and_rationals() {
        let r = ring(&["x"]);
        assert!(parse_poly::<Rational>("0", &r).unwrap().is_zero());
        let p = parse_poly::<Rational>("-3/4*x^2 + 1/2", &r).unwrap();
        assert_eq!(p.to_string(), "-3/4*x^2 + 1/2");
        assert_eq!(parse_poly::<Rational>(&p.to_string(), &r).unwrap(), p);
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(&["x", "y"]);
        match parse_poly::<Rational>("x + * y", &r) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_poly::<Rational>("x + z", &r), Err(Error::UnknownVariable("z".into())));
        assert!(matches!(parse_poly::<Rational>("2x", &r), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly::<Rational>("(x + y", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly::<Rational>("x/0", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly::<Rational>("", &r), Err(Error::Syntax { .. })));
    }

    #[test]
    fn nested_powers_and_signs() {
        let r = ring(&["x", "y"]);
        let p = parse_poly::<Rational>("-(x - y)^2 + x*(-y)", &r).unwrap();
        let q = parse_poly::<Rational>("-x^2 + x*y - y^2", &r).unwrap();
        assert_eq!(p, q);
    }
}
