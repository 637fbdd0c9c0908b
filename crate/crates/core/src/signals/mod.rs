//! Exact calculus on piecewise-polynomial controls.

mod norms;
mod piecewise;
mod probe;
mod upoly;
mod xi;

use thiserror::Error;

pub use norms::{l1_enclosure, l2_squared, linf_enclosure, lp_numeric, norm, sqrt_enclosure, NormValue, Space, LP_TOLERANCE};
pub use piecewise::{rescale, ControlPair, PiecewisePoly};
pub use probe::{scaling_probe, ScalingFit};
pub use upoly::UPoly;
pub use xi::{quartic_functionals, xi, xi_closed_form, xi_ipp, IppSplit, XiSession};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignalError {
    #[error("invalid breakpoints: {0}")]
    Breakpoints(String),
    #[error("time {t} is outside [0, {horizon}]")]
    OutOfRange { t: String, horizon: String },
    #[error("horizons differ: {left} and {right}")]
    HorizonMismatch { left: String, right: String },
    #[error("{0} is not a Hall element")]
    NotHall(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("derivative of order {order} jumps at t = {at}")]
    Regularity { order: usize, at: String },
    #[error("a sweep needs at least 4 points, got {0}")]
    DegenerateSweep(usize),
}
