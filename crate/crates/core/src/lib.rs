//! Exact computations for quadratic drift obstructions of control-affine
//! systems `x' = f0(x) + u f1(x) + v f2(x)` with polynomial fields.
//!
//! * [`freelie`]: Hall basis of the free Lie algebra on `X0, X1, X2`,
//!   rewriting of arbitrary brackets, bracket families and expansion
//!   coefficients.
//! * [`vectorfields`]: polynomial vector fields, bracket evaluation and exact
//!   rational subspaces.
//! * [`obstruction`]: the BC condition, symmetric and asymmetric verdicts,
//!   the S(theta) check and the quartic variant.
//! * [`signals`]: piecewise-polynomial controls, coordinates of the second
//!   kind and functional norms.
//! * [`simulate`]: adaptive integration, exact-state oracles and probes.
//! * [`dsl`]: text formats for systems and controls.
//! * [`corpus`]: the worked example systems.

pub mod corpus;
pub mod dsl;
pub mod freelie;
pub mod obstruction;
pub mod rational;
pub mod signals;
pub mod simulate;
pub mod vectorfields;

pub use rational::Q;
