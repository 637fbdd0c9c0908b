//! Polynomial vector fields over `Q^d`, their Lie brackets, evaluation of
//! Hall brackets at the origin and exact subspace arithmetic.

mod eval;
mod field;
mod poly;
mod subspace;

pub use eval::{evaluate_bracket, nilpotency_horizon, BracketTable, EvalError};
pub use field::{vf_bracket, FieldError, PolySystem, PolyVectorField};
pub use poly::{CompiledPoly, Monomial, Poly};
pub use subspace::{apply_form, RationalSubspace};
