//! The control format:
//!
//! ```text
//! horizon 1
//! u:
//!   piece 0..1/2: 2*s - 1
//!   piece 1/2..1: 0
//! v:
//!   piece 0..1: s^2
//! ```

use std::fmt;

use super::expr::{Cursor, Ring};
use super::lexer::{tokenize, Tok};
use super::DslError;
use crate::rational::{fmt as fmt_q, Q};
use crate::signals::{ControlPair, PiecewisePoly, UPoly};

impl Ring for UPoly {
    fn constant(&self, c: Q) -> UPoly {
        UPoly::constant(c)
    }
    fn add(&self, o: &UPoly) -> UPoly {
        UPoly::add(self, o)
    }
    fn neg(&self) -> UPoly {
        UPoly::scale(self, &-Q::from_integer(1.into()))
    }
    fn mul(&self, o: &UPoly) -> UPoly {
        UPoly::mul(self, o)
    }
    fn scale(&self, c: &Q) -> UPoly {
        UPoly::scale(self, c)
    }
}

/// Parses a polynomial in `s`.
pub fn parse_upoly(text: &str) -> Result<UPoly, DslError> {
    let toks = tokenize(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text);
    let p = cur.expr(&UPoly::zero(), &mut s_atom)?;
    cur.finish()?;
    Ok(p)
}

fn s_atom(name: &str, line: usize, col: usize) -> Result<UPoly, DslError> {
    if name == "s" {
        Ok(UPoly::s())
    } else {
        Err(DslError::new(line, col, format!("unknown identifier '{name}'; controls are polynomials in s")))
    }
}

pub fn parse_controls(text: &str) -> Result<ControlPair, DslError> {
    let mut horizon: Option<(Q, usize)> = None;
    let mut pieces: [Vec<(Q, Q, UPoly)>; 2] = Default::default();
    let mut block_line = [0usize; 2];
    let mut current: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokenize(raw, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, lineno, raw);
        if horizon.is_none() {
            let (kw, col) = cur.ident("'horizon'")?;
            if kw != "horizon" {
                return Err(DslError::new(lineno, col, format!("expected 'horizon', found '{kw}'")).expecting(&["'horizon'"]));
            }
            let col = cur.col();
            let t = cur.rational()?;
            if t <= Q::from_integer(0.into()) {
                return Err(DslError::new(lineno, col, "the horizon must be positive"));
            }
            cur.finish()?;
            horizon = Some((t, lineno));
            continue;
        }
        match cur.peek() {
            Some(Tok::Ident(kw)) if (kw == "u" || kw == "v") && toks.get(1).map(|t| &t.tok) == Some(&Tok::Colon) => {
                let which = usize::from(kw == "v");
                if block_line[which] != 0 {
                    return Err(DslError::new(lineno, toks[0].col, format!("block '{kw}' appears twice")));
                }
                block_line[which] = lineno;
                current = Some(which);
                cur.bump();
                cur.bump();
                cur.finish()?;
            }
            Some(Tok::Ident(kw)) if kw == "piece" => {
                let Some(which) = current else {
                    return Err(cur.error("piece outside a block", &["'u:'", "'v:'"]));
                };
                cur.bump();
                let col = cur.col();
                let a = cur.rational()?;
                cur.expect(Tok::DotDot, "'..'")?;
                let b = cur.rational()?;
                if b <= a {
                    return Err(DslError::new(lineno, col, format!("empty piece {}..{}", fmt_q(&a), fmt_q(&b))));
                }
                cur.expect(Tok::Colon, "':'")?;
                let p = cur.expr(&UPoly::zero(), &mut s_atom)?;
                cur.finish()?;
                pieces[which].push((a, b, p));
            }
            _ => return Err(cur.error("unexpected input", &["'u:'", "'v:'", "'piece'"])),
        }
    }
    let Some((t, tline)) = horizon else {
        return Err(DslError::new(1, 1, "empty document: expected 'horizon <T>'").expecting(&["'horizon'"]));
    };
    let mut signals = Vec::with_capacity(2);
    for (which, list) in pieces.into_iter().enumerate() {
        let line = if block_line[which] == 0 { tline } else { block_line[which] };
        let name = ["u", "v"][which];
        let signal = if list.is_empty() {
            PiecewisePoly::zero(&t)
        } else {
            if list.last().map(|p| &p.1) != Some(&t) {
                return Err(DslError::new(line, 1, format!("pieces of {name} must end at the horizon {}", fmt_q(&t))));
            }
            PiecewisePoly::from_pieces(list).map_err(|e| DslError::new(line, 1, format!("{name}: {e}")))?
        };
        signals.push(signal);
    }
    let v = signals.pop().expect("two signals");
    let u = signals.pop().expect("two signals");
    ControlPair::new(u, v).map_err(|e| DslError::new(tline, 1, e.to_string()))
}

/// Prints controls in the format read by [`parse_controls`].
pub struct ControlsDisplay<'a>(pub &'a ControlPair);

impl fmt::Display for ControlsDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "horizon {}", fmt_q(self.0.horizon()))?;
        for (name, sig) in [("u", self.0.u()), ("v", self.0.v())] {
            writeln!(f, "{name}:")?;
            for (a, b, p) in sig.intervals() {
                writeln!(f, "  piece {}..{}: {p}", fmt_q(a), fmt_q(b))?;
            }
        }
        Ok(())
    }
}
