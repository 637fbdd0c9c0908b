//! Enumeration of the Hall basis and rewriting of brackets into it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::One;
use thiserror::Error;

use super::bracket::{hall_cmp, Bracket, Counts, Generator};
use super::families::{identify, Family};
use super::lie::LieElement;
use crate::rational::{fmt, Q};

/// Default upper bound on the enumerated bracket length.
pub const DEFAULT_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HallError {
    #[error("requested max length {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("bracket of length {len} is longer than the basis (max length {max})")]
    BasisTooSmall { len: usize, max: usize },
    #[error("bracket with {n} control occurrences is outside the basis filter (max {max})")]
    OutsideFilter { n: usize, max: usize },
    #[error("{0} is not a Hall element")]
    NotHall(String),
    #[error("Hall axiom violated: {0}")]
    AxiomViolation(String),
}

/// Which part of the Hall set to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisConfig {
    /// Longest enumerated bracket.
    pub max_length: usize,
    /// Keep only members with at most this many control occurrences. The
    /// filtered set is closed under taking factors and rewriting preserves
    /// occurrence counts, so brackets inside the filter normalize exactly.
    pub max_n: Option<usize>,
    /// Refuse to enumerate beyond this length.
    pub cap: usize,
}

impl BasisConfig {
    pub fn new(max_length: usize) -> BasisConfig {
        BasisConfig { max_length, max_n: None, cap: DEFAULT_CAP }
    }

    pub fn with_max_n(mut self, max_n: usize) -> BasisConfig {
        self.max_n = Some(max_n);
        self
    }

    pub fn with_cap(mut self, cap: usize) -> BasisConfig {
        self.cap = cap;
        self
    }
}

/// The Hall members up to a given length, sorted by the Hall order.
///
/// A member's index is its rank, so comparing indices compares brackets.
/// Rewriting results are memoized; the basis can be shared between threads.
#[derive(Debug)]
pub struct HallBasis {
    config: BasisConfig,
    members: Vec<Bracket>,
    children: Vec<Option<(usize, usize)>>,
    index: HashMap<Bracket, usize>,
    pair_index: HashMap<(usize, usize), usize>,
    memo: Mutex<HashMap<(usize, usize), LieElement>>,
}

impl HallBasis {
    /// Enumerates all Hall members of length `<= max_length` (cap 10).
    pub fn build(max_length: usize) -> Result<HallBasis, HallError> {
        HallBasis::with_config(BasisConfig::new(max_length))
    }

    pub fn with_config(config: BasisConfig) -> Result<HallBasis, HallError> {
        if config.max_length > config.cap {
            return Err(HallError::CapExceeded { requested: config.max_length, cap: config.cap });
        }
        let keep = |n: usize| config.max_n.is_none_or(|m| n <= m);
        let mut by_len: Vec<Vec<Bracket>> = vec![Vec::new(); config.max_length + 1];
        if config.max_length >= 1 {
            by_len[1] = Generator::ALL.iter().map(|g| Bracket::gen(*g)).filter(|b| keep(b.n())).collect();
        }
        for len in 2..=config.max_length {
            let mut layer = Vec::new();
            for left_len in 1..len {
                for a in &by_len[left_len] {
                    for b in &by_len[len - left_len] {
                        if !keep(a.n() + b.n()) || hall_cmp(a, b) != Ordering::Less {
                            continue;
                        }
                        let admissible = match b.left() {
                            None => true,
                            Some(lb) => hall_cmp(lb, a) != Ordering::Greater,
                        };
                        if admissible {
                            layer.push(Bracket::pair(a.clone(), b.clone()));
                        }
                    }
                }
            }
            by_len[len] = layer;
        }
        let mut members: Vec<Bracket> = by_len.into_iter().flatten().collect();
        members.sort_by(hall_cmp);
        let index: HashMap<Bracket, usize> = members.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let mut children = Vec::with_capacity(members.len());
        let mut pair_index = HashMap::new();
        for (i, b) in members.iter().enumerate() {
            let ch = b.children().map(|(l, r)| (index[l], index[r]));
            if let Some(key) = ch {
                pair_index.insert(key, i);
            }
            children.push(ch);
        }
        let basis = HallBasis { config, members, children, index, pair_index, memo: Mutex::new(HashMap::new()) };
        basis.verify_axioms()?;
        Ok(basis)
    }

    /// Checks the Hall axioms and the shape of the one- and two-control layers.
    fn verify_axioms(&self) -> Result<(), HallError> {
        for (i, ch) in self.children.iter().enumerate() {
            let b = &self.members[i];
            if i > 0 && hall_cmp(&self.members[i - 1], b) != Ordering::Less {
                return Err(HallError::AxiomViolation(format!("order not strict at {b}")));
            }
            if let Some((l, r)) = *ch {
                if !(l < r && l < i) {
                    return Err(HallError::AxiomViolation(format!("{b} is not above its factors")));
                }
                if let Some((rl, _)) = self.children[r] {
                    if rl > l {
                        return Err(HallError::AxiomViolation(format!("{b} has lambda(right) > left")));
                    }
                }
            }
            let fam = identify(b);
            let ok = match b.n() {
                1 => matches!(fam, Some(Family::M { .. })),
                2 => matches!(fam, Some(Family::W { .. }) | Some(Family::C { .. })),
                _ => true,
            };
            if !ok {
                return Err(HallError::AxiomViolation(format!("{b} does not belong to the expected family")));
            }
        }
        Ok(())
    }

    pub fn config(&self) -> BasisConfig {
        self.config
    }

    pub fn max_length(&self) -> usize {
        self.config.max_length
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Bracket] {
        &self.members
    }

    pub fn member(&self, index: usize) -> &Bracket {
        &self.members[index]
    }

    pub fn counts(&self, index: usize) -> Counts {
        self.members[index].counts()
    }

    /// Factor indices of a pair member.
    pub fn children(&self, index: usize) -> Option<(usize, usize)> {
        self.children[index]
    }

    pub fn index_of(&self, b: &Bracket) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Number of members of each length `1..=max_length`.
    pub fn layer_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.config.max_length];
        for b in &self.members {
            dims[b.len() - 1] += 1;
        }
        dims
    }

    /// Indices of the members of length exactly `len`.
    pub fn layer(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(move |(_, b)| b.len() == len).map(|(i, _)| i)
    }

    /// The basis vector of a Hall member.
    pub fn element(&self, b: &Bracket) -> Result<LieElement, HallError> {
        self.check_fits(b.counts())?;
        self.index_of(b).map(LieElement::basis).ok_or_else(|| HallError::NotHall(b.to_string()))
    }

    fn check_fits(&self, c: Counts) -> Result<(), HallError> {
        if c.len > self.config.max_length {
            return Err(HallError::BasisTooSmall { len: c.len, max: self.config.max_length });
        }
        if let Some(max) = self.config.max_n {
            if c.n() > max {
                return Err(HallError::OutsideFilter { n: c.n(), max });
            }
        }
        Ok(())
    }

    /// Rewrites an arbitrary formal bracket as a combination of Hall members.
    pub fn normalize(&self, b: &Bracket) -> Result<LieElement, HallError> {
        self.check_fits(b.counts())?;
        match b.children() {
            None => Ok(LieElement::basis(self.index[b])),
            Some((l, r)) => {
                let l = self.normalize(l)?;
                let r = self.normalize(r)?;
                self.bracket(&l, &r)
            }
        }
    }

    /// Bilinear extension of the bracket to Lie elements.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, HallError> {
        let mut out = LieElement::zero();
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                let prod = x * y;
                out.add_scaled(&self.bracket_members(i, j)?, &prod);
            }
        }
        Ok(out)
    }

    /// `[b_i, b_j]` in the Hall basis.
    ///
    /// Uses antisymmetry to order the factors and the Jacobi identity
    /// `[a, [c, d]] = [[a, c], d] + [c, [a, d]]` when `(a, (c, d))` is not a
    /// Hall pair. Every recursive call either shortens the brackets or
    /// raises the smaller factor, so the rewriting terminates.
    pub fn bracket_members(&self, i: usize, j: usize) -> Result<LieElement, HallError> {
        if i == j {
            return Ok(LieElement::zero());
        }
        if i > j {
            return Ok(self.bracket_members(j, i)?.neg());
        }
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&(i, j)) {
            return Ok(hit.clone());
        }
        let ci = self.counts(i);
        let cj = self.counts(j);
        self.check_fits(Counts { len: ci.len + cj.len, n0: ci.n0 + cj.n0, n1: ci.n1 + cj.n1, n2: ci.n2 + cj.n2 })?;
        let result = match self.children[j] {
            Some((c, d)) if c > i => {
                let mut out = LieElement::zero();
                for (k, x) in self.bracket_members(i, c)?.terms() {
                    out.add_scaled(&self.bracket_members(k, d)?, x);
                }
                for (k, x) in self.bracket_members(i, d)?.terms() {
                    out.add_scaled(&self.bracket_members(c, k)?, x);
                }
                out
            }
            _ => LieElement::basis(self.pair_index[&(i, j)]),
        };
        self.memo.lock().expect("memo poisoned").insert((i, j), result.clone());
        Ok(result)
    }

    /// `e 0^nu`: repeated bracketing with `X0` on the right.
    pub fn with_drift(&self, e: &LieElement, nu: usize) -> Result<LieElement, HallError> {
        let x0 = LieElement::basis(self.index[&Bracket::x0()]);
        let mut out = e.clone();
        for _ in 0..nu {
            out = self.bracket(&out, &x0)?;
        }
        Ok(out)
    }

    /// Image of `e` under the automorphism exchanging `X1` and `X2`.
    pub fn swap_controls(&self, e: &LieElement) -> Result<LieElement, HallError> {
        let mut out = LieElement::zero();
        for (i, c) in e.terms() {
            out.add_scaled(&self.normalize(&self.members[i].swapped())?, c);
        }
        Ok(out)
    }

    /// `e + swap(e)`.
    pub fn symmetrize(&self, e: &LieElement) -> Result<LieElement, HallError> {
        Ok(e.add(&self.swap_controls(e)?))
    }

    /// Human-readable form such as `2*(X1,X2) - ((X1,X0),X2)`.
    pub fn format(&self, e: &LieElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (i, c)) in e.terms().enumerate() {
            let neg = c < &Q::from_integer(0.into());
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&fmt(&abs));
                out.push('*');
            }
            out.push_str(&self.members[i].to_string());
        }
        out
    }
}
