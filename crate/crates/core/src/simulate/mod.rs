//! Numerical integration of control-affine systems, exact-state oracles and
//! empirical probes.

mod integrator;
mod oracle;
mod probes;

use thiserror::Error;

use crate::signals::SignalError;

pub use integrator::{integrate, IntegratorStats, Tolerance, Trajectory};
pub use oracle::{exact_state_oracle, registered, truncated_state, RegisteredSystem, XiPolynomial};
pub use probes::{
    drift_probe, gn_probe, gn_ratio, magnus_truncation_probe, DriftFamily, DriftOrders, DriftProbeReport, DriftRow, DriftSweep, DriftVerdict,
    GnReport, GnRow, MagnusReport, MagnusRow, GN_SPREAD_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("relative tolerance {0} is outside (1e-14, 1e-3)")]
    Tolerance(f64),
    #[error("end time {t} is outside (0, {horizon}]")]
    Horizon { t: String, horizon: String },
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("step budget exhausted at t = {t}")]
    TooManySteps { t: f64 },
    #[error("no exact state formula is registered for system '{0}'")]
    Unregistered(String),
    #[error("empty sweep")]
    EmptySweep,
    #[error("expected a vector of length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error(transparent)]
    Signal(#[from] SignalError),
}
