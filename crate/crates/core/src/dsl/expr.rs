//! Polynomial expressions: `+ - * ^`, parentheses, rational literals and
//! named atoms resolved by the caller.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::lexer::{Spanned, Tok};
use super::DslError;
use crate::rational::Q;

/// Ring operations the parser needs.
pub(crate) trait Ring: Clone {
    fn constant(&self, c: Q) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Q) -> Self;
}

pub(crate) struct Cursor<'a> {
    pub toks: &'a [Spanned],
    pub pos: usize,
    pub line: usize,
    /// Column just past the end of the line, for end-of-line errors.
    pub end_col: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Spanned], line: usize, text: &str) -> Cursor<'a> {
        Cursor { toks, pos: 0, line, end_col: text.trim_end().chars().count() + 1 }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |s| s.col)
    }

    pub fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|s| &s.tok);
        self.pos += 1;
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error(&self, message: impl Into<String>, expected: &[&str]) -> DslError {
        let found = self.peek().map_or("end of line".to_string(), Tok::describe);
        let mut e = DslError::new(self.line, self.col(), format!("{}, found {found}", message.into()));
        e.expected = expected.iter().map(|s| s.to_string()).collect();
        e
    }

    pub fn expect(&mut self, tok: Tok, what: &str) -> Result<(), DslError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}"), &[what]))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<(String, usize), DslError> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, col))
            }
            _ => Err(self.error(format!("expected {what}"), &[what])),
        }
    }

    pub fn finish(&self) -> Result<(), DslError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input", &["end of line"]))
        }
    }

    /// `[-] int [/ int]`.
    pub fn rational(&mut self) -> Result<Q, DslError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let q = self.unsigned_rational()?;
        Ok(if neg { -q } else { q })
    }

    fn integer(&mut self) -> Result<BigInt, DslError> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v = s.parse().expect("digits");
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected a number", &["integer"])),
        }
    }

    fn unsigned_rational(&mut self) -> Result<Q, DslError> {
        let num = self.integer()?;
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let col = self.col();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(DslError::new(self.line, col, "zero denominator"));
            }
            return Ok(Q::new(num, den));
        }
        Ok(Q::from_integer(num))
    }

    /// `expr := [+|-] term ((+|-) term)*`.
    pub fn expr<R: Ring>(&mut self, zero: &R, atom: &mut dyn FnMut(&str, usize, usize) -> Result<R, DslError>) -> Result<R, DslError> {
        let mut acc = zero.constant(Q::zero());
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term(zero, atom)?;
            acc = if sign < 0 { acc.add(&t.neg()) } else { acc.add(&t) };
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term<R: Ring>(&mut self, zero: &R, atom: &mut dyn FnMut(&str, usize, usize) -> Result<R, DslError>) -> Result<R, DslError> {
        let mut acc = self.factor(zero, atom)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor(zero, atom)?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.unsigned_rational()?;
                    if d.is_zero() {
                        return Err(DslError::new(self.line, col, "division by zero"));
                    }
                    acc = acc.scale(&(Q::from_integer(1.into()) / d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor<R: Ring>(&mut self, zero: &R, atom: &mut dyn FnMut(&str, usize, usize) -> Result<R, DslError>) -> Result<R, DslError> {
        let base = self.atom(zero, atom)?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        let e = self.integer()?;
        let e = e.to_u32().filter(|e| *e <= 64).ok_or_else(|| DslError::new(self.line, col, "exponent must be an integer in 0..=64"))?;
        let mut out = zero.constant(Q::from_integer(1.into()));
        for _ in 0..e {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn atom<R: Ring>(&mut self, zero: &R, atom: &mut dyn FnMut(&str, usize, usize) -> Result<R, DslError>) -> Result<R, DslError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(_)) => Ok(zero.constant(self.unsigned_rational()?)),
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                atom(&name, self.line, col)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr(zero, atom)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error("expected a term", &["number", "identifier", "'('"])),
        }
    }
}
