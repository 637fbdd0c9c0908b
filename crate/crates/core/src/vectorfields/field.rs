//! Polynomial vector fields and control-affine systems.

use num_traits::Zero;
use thiserror::Error;

use super::poly::{CompiledPoly, Poly};
use crate::rational::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("f0(0) must vanish (component x{component} is {value})")]
    DriftNotVanishing { component: usize, value: String },
}

/// A vector field on `Q^d` with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    comps: Vec<Poly>,
}

impl PolyVectorField {
    pub fn zero(dim: usize) -> PolyVectorField {
        PolyVectorField { comps: vec![Poly::zero(dim); dim] }
    }

    /// The constant field `e_{i+1}` (0-based `i`).
    pub fn unit(dim: usize, i: usize) -> PolyVectorField {
        let mut f = PolyVectorField::zero(dim);
        f.comps[i] = Poly::constant(dim, Q::from_integer(1.into()));
        f
    }

    /// Panics unless every component has arity `comps.len()`.
    pub fn new(comps: Vec<Poly>) -> PolyVectorField {
        let d = comps.len();
        assert!(comps.iter().all(|p| p.nvars() == d), "component arity must equal dimension");
        PolyVectorField { comps }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, o: &PolyVectorField) -> PolyVectorField {
        PolyVectorField { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> PolyVectorField {
        PolyVectorField { comps: self.comps.iter().map(|a| a.scale(c)).collect() }
    }

    /// Directional derivative `Dg . f` of every component of `g` along `f`.
    fn derivative_along(g: &PolyVectorField, f: &PolyVectorField) -> Vec<Poly> {
        let d = g.dim();
        g.comps
            .iter()
            .map(|gi| {
                let mut acc = Poly::zero(d);
                for (j, fj) in f.comps.iter().enumerate() {
                    if fj.is_zero() {
                        continue;
                    }
                    let dg = gi.derivative(j);
                    if !dg.is_zero() {
                        acc = acc.add(&dg.mul(fj));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn eval(&self, x: &[Q]) -> Vec<Q> {
        self.comps.iter().map(|p| p.eval(x)).collect()
    }

    /// Value at the origin.
    pub fn at_zero(&self) -> Vec<Q> {
        self.comps.iter().map(Poly::constant_term).collect()
    }

    pub fn compile(&self) -> Vec<CompiledPoly> {
        self.comps.iter().map(Poly::compile).collect()
    }
}

/// Lie bracket of vector fields: `[f, g] = Dg . f - Df . g`.
pub fn vf_bracket(f: &PolyVectorField, g: &PolyVectorField) -> Result<PolyVectorField, FieldError> {
    if f.dim() != g.dim() {
        return Err(FieldError::DimensionMismatch(f.dim(), g.dim()));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(PolyVectorField::zero(f.dim()));
    }
    let a = PolyVectorField::derivative_along(g, f);
    let b = PolyVectorField::derivative_along(f, g);
    Ok(PolyVectorField { comps: a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect() })
}

/// `x' = f0(x) + u f1(x) + v f2(x)` with `f0(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    name: String,
    fields: [PolyVectorField; 3],
}

impl PolySystem {
    pub fn new(name: impl Into<String>, f0: PolyVectorField, f1: PolyVectorField, f2: PolyVectorField) -> Result<PolySystem, FieldError> {
        let d = f0.dim();
        for f in [&f1, &f2] {
            if f.dim() != d {
                return Err(FieldError::DimensionMismatch(d, f.dim()));
            }
        }
        if let Some((i, v)) = f0.at_zero().iter().enumerate().find(|(_, v)| !v.is_zero()) {
            return Err(FieldError::DriftNotVanishing { component: i + 1, value: crate::rational::fmt(v) });
        }
        Ok(PolySystem { name: name.into(), fields: [f0, f1, f2] })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.fields[0].dim()
    }

    /// `f_i` for `i` in `0..3`.
    pub fn field(&self, i: usize) -> &PolyVectorField {
        &self.fields[i]
    }
}
