//! Evaluation of Hall brackets on a polynomial system.

use std::sync::Arc;

use num_traits::Zero;

use super::field::{vf_bracket, FieldError, PolySystem, PolyVectorField};
use super::subspace::RationalSubspace;
use crate::freelie::{in_obstruction_set, Bracket, HallBasis, HallError, LieElement, ObstructionParams, ParamError};
use crate::rational::Q;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Hall(#[from] HallError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("length cap {cap} is below the longest bracket the check needs ({needed})")]
    CapTooSmall { cap: usize, needed: usize },
}

/// Direct recursive evaluation of a formal bracket, without rewriting.
pub fn evaluate_bracket(system: &PolySystem, b: &Bracket) -> Result<PolyVectorField, FieldError> {
    match b.children() {
        None => Ok(system.field(b.generator().expect("leaf").index()).clone()),
        Some((l, r)) => vf_bracket(&evaluate_bracket(system, l)?, &evaluate_bracket(system, r)?),
    }
}

/// Every Hall member up to the basis length, evaluated on one system.
///
/// Evaluation stops at the nilpotency horizon: once all members of some
/// length `L` vanish identically, every longer bracket does too (each is a
/// combination of brackets with a length-`L` factor), so the longer members
/// are recorded as zero without computation.
#[derive(Debug)]
pub struct BracketTable {
    basis: Arc<HallBasis>,
    dim: usize,
    fields: Vec<PolyVectorField>,
    at_zero: Vec<Vec<Q>>,
    horizon: Option<usize>,
}

impl BracketTable {
    /// Evaluates all members of `basis` on `system`. The horizon is only
    /// detected when the basis is unfiltered.
    pub fn new(system: &PolySystem, basis: Arc<HallBasis>) -> Result<BracketTable, EvalError> {
        let dim = system.dim();
        let mut fields: Vec<Option<PolyVectorField>> = vec![None; basis.len()];
        let mut horizon = None;
        let complete = basis.config().max_n.is_none();
        for len in 1..=basis.max_length() {
            let layer: Vec<usize> = basis.layer(len).collect();
            if horizon.is_some() {
                for i in layer {
                    fields[i] = Some(PolyVectorField::zero(dim));
                }
                continue;
            }
            let mut all_zero = true;
            for &i in &layer {
                let f = match basis.children(i) {
                    None => system.field(basis.member(i).generator().expect("leaf").index()).clone(),
                    Some((l, r)) => {
                        let fl = fields[l].as_ref().expect("factors are shorter");
                        let fr = fields[r].as_ref().expect("factors are shorter");
                        vf_bracket(fl, fr)?
                    }
                };
                all_zero &= f.is_zero();
                fields[i] = Some(f);
            }
            if complete && len >= 2 && all_zero {
                horizon = Some(len);
            }
        }
        let fields: Vec<PolyVectorField> = fields.into_iter().map(|f| f.expect("every layer visited")).collect();
        let at_zero = fields.iter().map(PolyVectorField::at_zero).collect();
        Ok(BracketTable { basis, dim, fields, at_zero, horizon })
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Smallest length `L >= 2` at which every member vanishes identically.
    pub fn horizon(&self) -> Option<usize> {
        self.horizon
    }

    pub fn field(&self, index: usize) -> &PolyVectorField {
        &self.fields[index]
    }

    pub fn value_at_zero(&self, index: usize) -> &[Q] {
        &self.at_zero[index]
    }

    pub fn evaluate_lie(&self, e: &LieElement) -> PolyVectorField {
        let mut out = PolyVectorField::zero(self.dim);
        for (i, c) in e.terms() {
            out = out.add(&self.fields[i].scale(c));
        }
        out
    }

    pub fn lie_at_zero(&self, e: &LieElement) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, c) in e.terms() {
            for (o, x) in out.iter_mut().zip(&self.at_zero[i]) {
                *o += c * x;
            }
        }
        out
    }

    /// `f_b(0)` for any formal bracket within the basis length.
    pub fn eval_at_zero(&self, b: &Bracket) -> Result<Vec<Q>, EvalError> {
        if let Some(i) = self.basis.index_of(b) {
            return Ok(self.at_zero[i].clone());
        }
        Ok(self.lie_at_zero(&self.basis.normalize(b)?))
    }

    /// Span of `f_b(0)` over the members in the compensating set with
    /// `|b| <= length_cap`. The flag is `true` when the result may miss
    /// longer brackets, i.e. no horizon was reached within the cap.
    pub fn obstruction_span(&self, params: &ObstructionParams, length_cap: usize) -> Result<(RationalSubspace, bool), EvalError> {
        params.validate()?;
        let cap = length_cap.min(self.basis.max_length());
        let mut span = RationalSubspace::zero(self.dim);
        for (i, b) in self.basis.members().iter().enumerate() {
            if b.len() > cap || self.at_zero[i].iter().all(Zero::is_zero) {
                continue;
            }
            if in_obstruction_set(b, params)? {
                span.insert(&self.at_zero[i])?;
            }
        }
        let truncated = match self.horizon {
            Some(h) => h > cap + 1,
            None => true,
        };
        Ok((span, truncated))
    }
}

/// Smallest length at which all brackets vanish, searched up to `length_cap`.
pub fn nilpotency_horizon(system: &PolySystem, length_cap: usize) -> Result<Option<usize>, EvalError> {
    let basis = Arc::new(HallBasis::build(length_cap)?);
    Ok(BracketTable::new(system, basis)?.horizon())
}
