//! Exact subspaces of `Q^d` in reduced row-echelon form.

use num_traits::{One, Zero};

use super::field::FieldError;
use crate::rational::Q;

/// A subspace of `Q^d` stored as reduced row-echelon rows with unit pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSubspace {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl RationalSubspace {
    pub fn zero(dim: usize) -> RationalSubspace {
        RationalSubspace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> RationalSubspace {
        let mut s = RationalSubspace::zero(dim);
        for i in 0..dim {
            let mut e = vec![Q::zero(); dim];
            e[i] = Q::one();
            s.insert(&e).expect("dimension");
        }
        s
    }

    pub fn span<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a Vec<Q>>) -> Result<RationalSubspace, FieldError> {
        let mut s = RationalSubspace::zero(dim);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    fn check(&self, v: &[Q]) -> Result<(), FieldError> {
        if v.len() != self.dim {
            return Err(FieldError::DimensionMismatch(self.dim, v.len()));
        }
        Ok(())
    }

    /// `v` minus its components along the pivot rows.
    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &c * y;
            }
        }
        r
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Q]) -> Result<bool, FieldError> {
        self.check(v)?;
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = Q::one() / &r[p];
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                *x -= &c * y;
            }
        }
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        Ok(true)
    }

    pub fn contains(&self, v: &[Q]) -> Result<bool, FieldError> {
        self.check(v)?;
        Ok(self.reduce(v).iter().all(Zero::is_zero))
    }

    /// Indices of the coordinates that parametrize the quotient.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.dim).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Coordinates of the class of `v` in `Q^d / N`: the non-pivot entries
    /// of `v` after reduction. Zero exactly when `v` is in the subspace.
    pub fn quotient_image(&self, v: &[Q]) -> Result<Vec<Q>, FieldError> {
        self.check(v)?;
        let r = self.reduce(v);
        Ok(self.free_coordinates().into_iter().map(|i| r[i].clone()).collect())
    }

    /// Lifts a linear form on quotient coordinates to a form on `Q^d` that
    /// vanishes on the subspace.
    pub fn lift_form(&self, c: &[Q]) -> Vec<Q> {
        let free = self.free_coordinates();
        assert_eq!(c.len(), free.len(), "form arity");
        let mut p = vec![Q::zero(); self.dim];
        for (ci, &f) in c.iter().zip(&free) {
            p[f] += ci;
        }
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let mut s = Q::zero();
            for (ci, &f) in c.iter().zip(&free) {
                s += ci * &row[f];
            }
            p[piv] -= s;
        }
        p
    }

    /// Whether this subspace contains `other`.
    pub fn includes(&self, other: &RationalSubspace) -> bool {
        other.rows.iter().all(|r| self.contains(r).unwrap_or(false))
    }
}

/// `sum p_i v_i`.
pub fn apply_form(p: &[Q], v: &[Q]) -> Q {
    p.iter().zip(v).map(|(a, b)| a * b).sum()
}
