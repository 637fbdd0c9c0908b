//! Elements of the free Lie algebra as sparse combinations of Hall members.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

/// Sparse rational combination of Hall basis members, keyed by basis index.
///
/// Coefficients are never stored as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    terms: BTreeMap<usize, Q>,
}

impl LieElement {
    pub fn zero() -> LieElement {
        LieElement::default()
    }

    /// The basis vector of member `index`.
    pub fn basis(index: usize) -> LieElement {
        let mut e = LieElement::zero();
        e.terms.insert(index, Q::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Q {
        self.terms.get(&index).cloned().unwrap_or_else(Q::zero)
    }

    /// `(index, coefficient)` pairs in increasing basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn add_term(&mut self, index: usize, coeff: &Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LieElement, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.terms {
            self.add_term(*i, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Q) -> LieElement {
        let mut out = LieElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LieElement {
        self.scaled(&-Q::one())
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }
}
