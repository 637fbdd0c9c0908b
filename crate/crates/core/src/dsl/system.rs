//! The system format:
//!
//! ```text
//! system jouet dim 3
//! param alpha = 1
//! f0:
//!   x3' += x1^2 + x2^2 + alpha*x1*x2
//! f1:
//!   x1' += 1
//! f2:
//!   x2' += 1
//! ```

use std::fmt;

use num_traits::Zero;

use super::expr::{Cursor, Ring};
use super::lexer::{tokenize, Tok};
use super::DslError;
use crate::rational::{fmt as fmt_q, Q};
use crate::vectorfields::{Poly, PolySystem, PolyVectorField};

/// Largest accepted dimension.
pub const MAX_DIM: usize = 64;

impl Ring for Poly {
    fn constant(&self, c: Q) -> Poly {
        Poly::constant(self.nvars(), c)
    }
    fn add(&self, o: &Poly) -> Poly {
        Poly::add(self, o)
    }
    fn neg(&self) -> Poly {
        Poly::scale(self, &-Q::from_integer(1.into()))
    }
    fn mul(&self, o: &Poly) -> Poly {
        Poly::mul(self, o)
    }
    fn scale(&self, c: &Q) -> Poly {
        Poly::scale(self, c)
    }
}

/// One `x<i>' += poly` line; `coordinate` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldLine {
    pub coordinate: usize,
    pub poly: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDocument {
    pub name: String,
    pub dim: usize,
    pub params: Vec<(String, Q)>,
    /// Lines of the `f0`, `f1`, `f2` blocks with parameters substituted.
    pub blocks: [Vec<FieldLine>; 3],
}

impl SystemDocument {
    pub fn to_system(&self) -> PolySystem {
        PolySystem::new(self.name.clone(), self.to_field(0), self.to_field(1), self.to_field(2)).expect("validated at parse time")
    }

    fn to_field(&self, i: usize) -> PolyVectorField {
        let mut comps = vec![Poly::zero(self.dim); self.dim];
        for l in &self.blocks[i] {
            comps[l.coordinate - 1] = comps[l.coordinate - 1].add(&l.poly);
        }
        PolyVectorField::new(comps)
    }

    /// Builds a document with one line per nonzero component.
    pub fn from_system(system: &PolySystem) -> SystemDocument {
        let block = |i: usize| {
            system.field(i).components().iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(c, p)| FieldLine { coordinate: c + 1, poly: p.clone() }).collect()
        };
        SystemDocument { name: system.name().to_string(), dim: system.dim(), params: Vec::new(), blocks: [block(0), block(1), block(2)] }
    }
}

impl fmt::Display for SystemDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system {} dim {}", self.name, self.dim)?;
        for (name, value) in &self.params {
            writeln!(f, "param {name} = {}", fmt_q(value))?;
        }
        for (i, block) in self.blocks.iter().enumerate() {
            writeln!(f, "f{i}:")?;
            for l in block {
                writeln!(f, "  x{}' += {}", l.coordinate, l.poly)?;
            }
        }
        Ok(())
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "system" | "dim" | "param" | "f0" | "f1" | "f2" | "s")
}

/// `x<i>` -> `i`.
fn coordinate_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

pub fn parse_system(text: &str) -> Result<SystemDocument, DslError> {
    parse_system_with(text, &[])
}

/// Parses with the given parameter values replacing the declared ones. Every
/// override must name a declared parameter.
pub fn parse_system_with(text: &str, overrides: &[(String, Q)]) -> Result<SystemDocument, DslError> {
    let mut header: Option<(String, usize)> = None;
    let mut params: Vec<(String, Q)> = Vec::new();
    let mut blocks: [Vec<FieldLine>; 3] = Default::default();
    let mut current: Option<usize> = None;
    // Position of the first constant term of f0, for the diagnostic.
    let mut drift_sources: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokenize(raw, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, lineno, raw);
        let Some(d) = header.as_ref().map(|h| h.1) else {
            let (kw, _) = cur.ident("'system'")?;
            if kw != "system" {
                return Err(DslError::new(lineno, toks[0].col, format!("expected 'system', found '{kw}'")).expecting(&["'system'"]));
            }
            let (name, _) = cur.ident("system name")?;
            let (kw, col) = cur.ident("'dim'")?;
            if kw != "dim" {
                return Err(DslError::new(lineno, col, format!("expected 'dim', found '{kw}'")).expecting(&["'dim'"]));
            }
            let col = cur.col();
            let d = match cur.bump() {
                Some(Tok::Int(s)) => s.parse::<usize>().ok().filter(|d| (1..=MAX_DIM).contains(d)),
                _ => return Err(DslError::new(lineno, col, "expected the dimension").expecting(&["integer"])),
            }
            .ok_or_else(|| DslError::new(lineno, col, format!("dimension must be in 1..={MAX_DIM}")))?;
            cur.finish()?;
            header = Some((name, d));
            continue;
        };
        match cur.peek() {
            Some(Tok::Ident(kw)) if kw == "param" => {
                cur.bump();
                let (name, col) = cur.ident("parameter name")?;
                if is_keyword(&name) || coordinate_index(&name).is_some() {
                    return Err(DslError::new(lineno, col, format!("'{name}' is reserved")));
                }
                if params.iter().any(|(n, _)| *n == name) {
                    return Err(DslError::new(lineno, col, format!("parameter '{name}' is declared twice")));
                }
                cur.expect(Tok::Eq, "'='")?;
                let value = cur.rational()?;
                cur.finish()?;
                let value = overrides.iter().find(|(n, _)| *n == name).map_or(value, |(_, v)| v.clone());
                params.push((name, value));
            }
            Some(Tok::Ident(kw)) if matches!(kw.as_str(), "f0" | "f1" | "f2") && toks.get(1).map(|t| &t.tok) == Some(&Tok::Colon) => {
                current = Some((kw.as_bytes()[1] - b'0') as usize);
                cur.bump();
                cur.bump();
                cur.finish()?;
            }
            Some(Tok::Ident(name)) if coordinate_index(name).is_some() || name.starts_with('x') => {
                let Some(block) = current else {
                    return Err(cur.error("field line outside a block", &["'f0:'", "'f1:'", "'f2:'"]));
                };
                let (name, col) = cur.ident("coordinate")?;
                let coordinate = coordinate_index(&name).filter(|i| *i <= d).ok_or_else(|| DslError::new(lineno, col, format!("unknown coordinate {name}")))?;
                cur.expect(Tok::Prime, "'''")?;
                cur.expect(Tok::PlusEq, "'+='")?;
                let expr_col = cur.col();
                let zero = Poly::zero(d);
                let mut atom = |name: &str, line: usize, col: usize| -> Result<Poly, DslError> {
                    if let Some(i) = coordinate_index(name) {
                        return if i <= d { Ok(Poly::var(d, i - 1)) } else { Err(DslError::new(line, col, format!("unknown coordinate {name}"))) };
                    }
                    params
                        .iter()
                        .find(|(n, _)| n == name)
                        .map(|(_, v)| Poly::constant(d, v.clone()))
                        .ok_or_else(|| DslError::new(line, col, format!("unknown identifier '{name}'")))
                };
                let poly = cur.expr(&zero, &mut atom)?;
                cur.finish()?;
                if block == 0 && !poly.constant_term().is_zero() {
                    drift_sources.push((coordinate, lineno, expr_col));
                }
                blocks[block].push(FieldLine { coordinate, poly });
            }
            _ => return Err(cur.error("unexpected input", &["'param'", "'f0:'", "'f1:'", "'f2:'", "field line"])),
        }
    }
    let Some((name, dim)) = header else {
        return Err(DslError::new(text.lines().count().max(1), 1, "empty document: expected a 'system <name> dim <d>' header").expecting(&["'system'"]));
    };
    if let Some((missing, _)) = overrides.iter().find(|(n, _)| !params.iter().any(|(p, _)| p == n)) {
        return Err(DslError::new(1, 1, format!("no parameter named '{missing}' is declared")));
    }
    let doc = SystemDocument { name, dim, params, blocks };
    let f0 = doc.to_field(0);
    if let Some((i, v)) = f0.at_zero().iter().enumerate().find(|(_, v)| !v.is_zero()) {
        let (line, col) = drift_sources.iter().find(|(c, _, _)| *c == i + 1).map(|(_, l, c)| (*l, *c)).unwrap_or((1, 1));
        return Err(DslError::new(line, col, format!("f0(0) must vanish: component x{} is {}", i + 1, fmt_q(v))));
    }
    Ok(doc)
}
