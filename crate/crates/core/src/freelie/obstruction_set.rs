//! Membership in the sets of brackets allowed to compensate the quadratic
//! drift at a given regularity.

use serde::Serialize;
use thiserror::Error;

use super::bracket::Bracket;
use super::families::{identify, Control, Family};
use crate::rational::ceil_div;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("k and m must be at least 1 (got k = {k}, m = {m})")]
    NonPositive { k: usize, m: usize },
    #[error("asymmetric parameters need 1 <= k' <= k and m' >= 1 (got k = {k}, k' = {kp}, m' = {mp})")]
    BadAsymmetric { k: usize, kp: usize, mp: usize },
}

/// Regularity and order parameters of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ObstructionParams {
    Symmetric { k: usize, m: usize },
    Asymmetric { k: usize, kp: usize, m: usize, mp: usize },
}

/// Truncation order `1 + ceil(2k / m)`.
pub fn truncation_order(k: usize, m: usize) -> usize {
    1 + ceil_div(2 * k, m)
}

impl ObstructionParams {
    pub fn symmetric(k: usize, m: usize) -> Result<ObstructionParams, ParamError> {
        let p = ObstructionParams::Symmetric { k, m };
        p.validate()?;
        Ok(p)
    }

    pub fn asymmetric(k: usize, kp: usize, m: usize, mp: usize) -> Result<ObstructionParams, ParamError> {
        let p = ObstructionParams::Asymmetric { k, kp, m, mp };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        match *self {
            ObstructionParams::Symmetric { k, m } if k == 0 || m == 0 => Err(ParamError::NonPositive { k, m }),
            ObstructionParams::Asymmetric { k, m, .. } if k == 0 || m == 0 => Err(ParamError::NonPositive { k, m }),
            ObstructionParams::Asymmetric { k, kp, mp, .. } if kp == 0 || kp > k || mp == 0 => {
                Err(ParamError::BadAsymmetric { k, kp, mp })
            }
            _ => Ok(()),
        }
    }

    /// `(k, k')`; equal for symmetric checks.
    pub fn orders(&self) -> (usize, usize) {
        match *self {
            ObstructionParams::Symmetric { k, .. } => (k, k),
            ObstructionParams::Asymmetric { k, kp, .. } => (k, kp),
        }
    }

    /// `(pi(k, m), pi(k', m'))`.
    pub fn truncation_orders(&self) -> (usize, usize) {
        match *self {
            ObstructionParams::Symmetric { k, m } => (truncation_order(k, m), truncation_order(k, m)),
            ObstructionParams::Asymmetric { k, kp, m, mp } => (truncation_order(k, m), truncation_order(kp, mp)),
        }
    }

    /// Length of the longest bracket the check must evaluate.
    pub fn required_length(&self) -> usize {
        // W^1_k has length 2k+1 and k' <= k.
        2 * self.orders().0 + 1
    }
}

/// Whether the Hall member `b` belongs to the compensating set for `params`.
///
/// Symmetric `(k, m)`: members with `n` in `[1, pi] \ {2}`, `C_{j,l}` with
/// `j <= 2k-2`, and `W^i_{j,l}` with `1 <= j <= k-1`.
///
/// Asymmetric `(k, k', m, m')`: members with `n` in `[1, pi] \ {2}`,
/// `n1 <= pi` and `n2 <= pi'`; `C_{j,l}` with `j <= k+k'-2`; `W^1_{i,l}`
/// with `1 <= i <= k-1`; and `W^2_{j,l}` with `1 <= j <= k'-1`.
///
/// The `W` part is a union over each control separately. Reading it as a
/// product that is empty when `k' = 1` would leave `W^1_{i,l}`, `i < k`,
/// outside the set even though the quadratic expansion of
/// `[B 0^{k'-l-1}, B 0^{k'-l}]` produces them.
pub fn in_obstruction_set(b: &Bracket, params: &ObstructionParams) -> Result<bool, ParamError> {
    params.validate()?;
    let counts = b.counts();
    let n = counts.n();
    let (pi, pi_p) = params.truncation_orders();
    if n != 2 {
        let in_range = (1..=pi).contains(&n);
        return Ok(match *params {
            ObstructionParams::Symmetric { .. } => in_range,
            ObstructionParams::Asymmetric { .. } => in_range && counts.n1 <= pi && counts.n2 <= pi_p,
        });
    }
    let (k, kp) = params.orders();
    Ok(match identify(b) {
        Some(Family::C { j, .. }) => j + 2 <= k + kp,
        Some(Family::W { control: Control::U, j, .. }) => j < k,
        Some(Family::W { control: Control::V, j, .. }) => j < kp,
        // Every two-control Hall member is a W or C bracket; anything else
        // (non-Hall input) is not in the set.
        _ => false,
    })
}
