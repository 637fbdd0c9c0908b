//! Empirical checks of drift, Magnus truncation and interpolation bounds.
//!
//! Probes fit constants on finite sweeps; they report consistency, never
//! proofs.

use num_traits::Zero;
use serde::Serialize;

use super::integrator::{integrate, Tolerance};
use super::oracle::truncated_state;
use super::SimError;
use crate::freelie::truncation_order;
use crate::rational::{fmt as fmt_q, to_f64, Q};
use crate::signals::{l2_squared, norm, ControlPair, PiecewisePoly, Space};
use crate::vectorfields::PolySystem;

/// Controls indexed by `(t, amplitude)`.
pub type DriftFamily<'a> = &'a (dyn Fn(&Q, &Q) -> ControlPair + Sync);

#[derive(Clone, Debug)]
pub struct DriftSweep {
    pub times: Vec<Q>,
    pub amplitudes: Vec<Q>,
}

/// Which quantity measures the size of the controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DriftOrders {
    pub k: usize,
    pub k_prime: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftRow {
    pub t: String,
    pub amplitude: String,
    /// `P x(t)`.
    pub projection: f64,
    /// `int_0^t (u_k^2 + v_k'^2)`, exact.
    pub delta: f64,
    /// `|x(t)|^beta`.
    pub state_term: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DriftVerdict {
    #[serde(rename = "consistent with drift")]
    Consistent,
    #[serde(rename = "drift violated by exhibited family")]
    Violated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftProbeReport {
    pub family: String,
    pub orders: DriftOrders,
    pub beta: f64,
    /// Weight of `|x|^beta` in the fitted inequality.
    pub correction: f64,
    pub rows: Vec<DriftRow>,
    /// `min P x / delta` over the sweep.
    pub min_ratio: f64,
    /// `min (P x + correction |x|^beta) / delta`; the drift constant when
    /// positive.
    pub fitted_constant: f64,
    pub verdict: DriftVerdict,
}

impl DriftProbeReport {
    /// `t,amplitude,projection,delta` rows with a header.
    pub fn csv_rows(&self) -> Vec<[String; 4]> {
        self.rows.iter().map(|r| [r.t.clone(), r.amplitude.clone(), r.projection.to_string(), r.delta.to_string()]).collect()
    }
}

/// Integrates each sweep point and tests
/// `P x(t) + C |x(t)|^beta >= c * delta(u, v)` with `beta = 1 + 1/pi`,
/// `C = correction` and the fitted `c`.
#[allow(clippy::too_many_arguments)]
pub fn drift_probe(
    system: &PolySystem,
    form: &[Q],
    orders: DriftOrders,
    family_name: &str,
    family: DriftFamily<'_>,
    sweep: &DriftSweep,
    correction: f64,
    tol: Tolerance,
) -> Result<DriftProbeReport, SimError> {
    if sweep.times.is_empty() || sweep.amplitudes.is_empty() {
        return Err(SimError::EmptySweep);
    }
    if form.len() != system.dim() {
        return Err(SimError::Dimension { expected: system.dim(), got: form.len() });
    }
    let pi = truncation_order(orders.k.max(orders.k_prime), orders.m);
    let beta = 1.0 + 1.0 / pi as f64;
    let p: Vec<f64> = form.iter().map(to_f64).collect();
    let mut rows = Vec::new();
    for t in &sweep.times {
        for a in &sweep.amplitudes {
            let controls = family(t, a);
            let traj = integrate(system, &controls, t, tol)?;
            let x = traj.final_state();
            let projection: f64 = p.iter().zip(x).map(|(pi, xi)| pi * xi).sum();
            let delta = l2_squared(&controls.u().iterated_primitive(orders.k)) + l2_squared(&controls.v().iterated_primitive(orders.k_prime));
            if delta.is_zero() {
                return Err(SimError::ZeroDenominator(format!("delta vanishes at t = {}, amplitude = {}", fmt_q(t), fmt_q(a))));
            }
            let state_term = x.iter().map(|v| v * v).sum::<f64>().sqrt().powf(beta);
            rows.push(DriftRow { t: fmt_q(t), amplitude: fmt_q(a), projection, delta: to_f64(&delta), state_term });
        }
    }
    let min_ratio = rows.iter().map(|r| r.projection / r.delta).fold(f64::INFINITY, f64::min);
    let fitted_constant = rows.iter().map(|r| (r.projection + correction * r.state_term) / r.delta).fold(f64::INFINITY, f64::min);
    let verdict = if fitted_constant > 0.0 { DriftVerdict::Consistent } else { DriftVerdict::Violated };
    Ok(DriftProbeReport { family: family_name.to_string(), orders, beta, correction, rows, min_ratio, fitted_constant, verdict })
}

/// `max_i |a_i - b_i|`.
fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MagnusRow {
    pub scale: String,
    /// `||(u, v)||_{L^1}`.
    pub control_size: f64,
    /// Sup distance between the integrated state and the truncated formula.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MagnusReport {
    pub max_len: usize,
    pub rows: Vec<MagnusRow>,
    /// Slope of `log residual` against `log control_size`; `None` when
    /// fewer than two residuals are above round-off.
    pub decay_order: Option<f64>,
}

/// Compares the integrator with the state formula truncated at bracket
/// length `max_len`, along `family(scale)` for each scale.
pub fn magnus_truncation_probe(
    system: &PolySystem,
    family: &dyn Fn(&Q) -> ControlPair,
    scales: &[Q],
    t: &Q,
    max_len: usize,
    tol: Tolerance,
) -> Result<MagnusReport, SimError> {
    if scales.is_empty() {
        return Err(SimError::EmptySweep);
    }
    let mut rows = Vec::new();
    for scale in scales {
        let controls = family(scale);
        let exact: Vec<f64> = truncated_state(system, &controls, t, max_len)?.iter().map(to_f64).collect();
        let traj = integrate(system, &controls, t, tol)?;
        let size = norm(controls.u(), Space::L1)?.value + norm(controls.v(), Space::L1)?.value;
        rows.push(MagnusRow { scale: fmt_q(scale), control_size: size, residual: sup_distance(traj.final_state(), &exact) });
    }
    let floor = 1e3 * tol.abs.max(f64::MIN_POSITIVE);
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.residual > floor && r.control_size > 0.0).map(|r| (r.control_size.ln(), r.residual.ln())).collect();
    Ok(MagnusReport { max_len, rows, decay_order: slope(&pts) })
}

fn slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GnRow {
    pub t: String,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GnReport {
    pub k: usize,
    pub m: usize,
    pub p: f64,
    pub pi: usize,
    /// Rows by decreasing `t`.
    pub rows: Vec<GnRow>,
    /// `max ratio / min ratio`.
    pub spread: f64,
    /// The ratio increases at every halving of `t` without slowing down.
    pub growth: bool,
    pub bounded: bool,
}

/// Spread threshold for [`GnReport::bounded`].
pub const GN_SPREAD_LIMIT: f64 = 10.0;

/// `||u||_{L^1}^{pi+1} / (t^{pi-2k} ||u||_{W^{m,p}}^{pi-1} ||u_k||_{L^2}^2)`.
pub fn gn_ratio(u: &PiecewisePoly, k: usize, m: usize, p: f64) -> Result<f64, SimError> {
    let pi = truncation_order(k, m) as i32;
    let uk = l2_squared(&u.iterated_primitive(k));
    if uk.is_zero() {
        return Err(SimError::ZeroDenominator(format!("u_{k} vanishes")));
    }
    let l1 = norm(u, Space::L1)?.value;
    let w = norm(u, Space::Wmp { m, p })?.value;
    let t = to_f64(u.horizon());
    Ok(l1.powi(pi + 1) / (t.powi(pi - 2 * k as i32) * w.powi(pi - 1) * to_f64(&uk)))
}

/// Evaluates [`gn_ratio`] over the sweep. Bounded means a spread below
/// [`GN_SPREAD_LIMIT`] and no sustained growth as `t` decreases.
pub fn gn_probe(family: &dyn Fn(&Q) -> PiecewisePoly, ts: &[Q], k: usize, m: usize, p: f64) -> Result<GnReport, SimError> {
    if ts.is_empty() {
        return Err(SimError::EmptySweep);
    }
    let mut ts = ts.to_vec();
    ts.sort_by(|a, b| b.cmp(a));
    let mut rows = Vec::new();
    for t in &ts {
        rows.push(GnRow { t: fmt_q(t), ratio: gn_ratio(&family(t), k, m, p)? });
    }
    let max = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    let min = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let spread = max / min;
    let factors: Vec<f64> = rows.windows(2).map(|w| w[1].ratio / w[0].ratio).collect();
    let growth = !factors.is_empty() && factors.iter().all(|f| *f > 1.0) && factors.last() >= factors.first();
    Ok(GnReport { k, m, p, pi: truncation_order(k, m), rows, spread, growth, bounded: spread < GN_SPREAD_LIMIT && !growth })
}
