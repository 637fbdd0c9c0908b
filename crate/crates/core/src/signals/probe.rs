//! Empirical scaling exponents of `xi_b` along a family of controls.

use super::piecewise::ControlPair;
use super::xi::xi;
use super::SignalError;
use crate::freelie::Bracket;
use crate::rational::{to_f64, Q};

/// Least-squares fit of `log |xi_b(t)|` against `log t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit {
    pub exponent: f64,
    /// `exp` of the fitted intercept.
    pub constant: f64,
    /// `(t, xi_b(t))` at every sweep point.
    pub samples: Vec<(f64, f64)>,
}

/// Fits the growth exponent of `xi_b(t, family(t))` over the sweep `ts`.
pub fn scaling_probe(b: &Bracket, family: &dyn Fn(&Q) -> ControlPair, ts: &[Q]) -> Result<ScalingFit, SignalError> {
    if ts.len() < 4 {
        return Err(SignalError::DegenerateSweep(ts.len()));
    }
    let mut samples = Vec::with_capacity(ts.len());
    for t in ts {
        samples.push((to_f64(t), to_f64(&xi(b, t, &family(t))?)));
    }
    if samples.iter().any(|(_, x)| *x == 0.0) {
        return Err(SignalError::Precondition(format!("xi_{b} vanishes on the sweep")));
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|(t, x)| (t.ln(), x.abs().ln())).collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(SignalError::DegenerateSweep(ts.len()));
    }
    let exponent = sxy / sxx;
    Ok(ScalingFit { exponent, constant: (my - exponent * mx).exp(), samples })
}
