//! Dormand–Prince 5(4) with steps aligned on control breakpoints.

use serde::Serialize;

use super::SimError;
use crate::rational::{fmt as fmt_q, to_f64, Q};
use crate::signals::{ControlPair, UPoly};
use crate::vectorfields::{CompiledPoly, PolySystem};

const MAX_STEPS: usize = 2_000_000;

/// Error tolerances. The absolute part keeps components near zero from
/// forcing tiny steps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    /// `abs = 1e-6 * rel`.
    pub fn new(rel: f64) -> Result<Tolerance, SimError> {
        if !(rel > 1e-14 && rel < 1e-3) {
            return Err(SimError::Tolerance(rel));
        }
        Ok(Tolerance { rel, abs: rel * 1e-6 })
    }

    pub fn with_abs(mut self, abs: f64) -> Tolerance {
        self.abs = abs;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct IntegratorStats {
    pub steps: usize,
    pub rejected: usize,
    /// Largest accepted normalized local error estimate.
    pub max_error: f64,
}

/// Accepted step endpoints, starting at the origin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub stats: IntegratorStats,
}

impl Trajectory {
    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory starts at 0")
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory starts at 0")
    }
}

struct Rhs {
    fields: [Vec<CompiledPoly>; 3],
}

impl Rhs {
    fn new(system: &PolySystem) -> Rhs {
        Rhs { fields: [system.field(0).compile(), system.field(1).compile(), system.field(2).compile()] }
    }

    fn eval(&self, x: &[f64], u: f64, v: f64, out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let mut val = self.fields[0][i].eval(x);
            if u != 0.0 && !self.fields[1][i].is_zero() {
                val += u * self.fields[1][i].eval(x);
            }
            if v != 0.0 && !self.fields[2][i].is_zero() {
                val += v * self.fields[2][i].eval(x);
            }
            *o = val;
        }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates from `x(0) = 0` up to `t_end`.
pub fn integrate(system: &PolySystem, controls: &ControlPair, t_end: &Q, tol: Tolerance) -> Result<Trajectory, SimError> {
    if t_end > controls.horizon() || t_end <= &Q::from_integer(0.into()) {
        return Err(SimError::Horizon { t: fmt_q(t_end), horizon: fmt_q(controls.horizon()) });
    }
    let rhs = Rhs::new(system);
    let d = system.dim();
    let mut cuts: Vec<Q> = controls.breaks().into_iter().filter(|b| b < t_end).collect();
    cuts.push(t_end.clone());
    let mut x = vec![0.0; d];
    let mut traj = Trajectory { times: vec![0.0], states: vec![x.clone()], stats: IntegratorStats::default() };
    let mut h = to_f64(t_end) / 64.0;
    for w in cuts.windows(2) {
        let (a, b) = (to_f64(&w[0]), to_f64(&w[1]));
        // Controls are evaluated with the polynomials of the current piece, so
        // the right value is used up to and including the right endpoint.
        let mid = (&w[0] + &w[1]) / Q::from_integer(2.into());
        let (pu, pv) = (piece_at(controls.u().breaks(), controls.u().pieces(), &mid), piece_at(controls.v().breaks(), controls.v().pieces(), &mid));
        let control = |t: f64| (pu.eval_f64(t), pv.eval_f64(t));
        integrate_piece(&rhs, &control, a, b, &mut x, &mut h, tol, &mut traj)?;
    }
    Ok(traj)
}

fn piece_at<'a>(breaks: &[Q], pieces: &'a [UPoly], t: &Q) -> &'a UPoly {
    let i = breaks.partition_point(|b| b <= t).saturating_sub(1).min(pieces.len() - 1);
    &pieces[i]
}

#[allow(clippy::too_many_arguments)]
fn integrate_piece(
    rhs: &Rhs,
    control: &dyn Fn(f64) -> (f64, f64),
    a: f64,
    b: f64,
    x: &mut [f64],
    h: &mut f64,
    tol: Tolerance,
    traj: &mut Trajectory,
) -> Result<(), SimError> {
    let d = x.len();
    let mut k = vec![vec![0.0; d]; 7];
    let mut stage = vec![0.0; d];
    let mut next = vec![0.0; d];
    let mut t = a;
    let (u, v) = control(t);
    rhs.eval(x, u, v, &mut k[0]);
    *h = h.min(b - a);
    while t < b {
        if traj.stats.steps + traj.stats.rejected >= MAX_STEPS {
            return Err(SimError::TooManySteps { t });
        }
        let last = t + *h >= b - 1e-14 * b.abs().max(1.0);
        let step = if last { b - t } else { *h };
        if step <= 1e-15 * t.abs().max(b - a) {
            return Err(SimError::StepUnderflow { t });
        }
        for s in 1..7 {
            for i in 0..d {
                stage[i] = x[i] + step * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
            }
            let (u, v) = control(t + C[s] * step);
            rhs.eval(&stage, u, v, &mut k[s]);
        }
        // Stage 7 is evaluated at the fifth-order solution (FSAL).
        next.copy_from_slice(&stage);
        let mut err: f64 = 0.0;
        for i in 0..d {
            let e = step * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
            let scale = tol.abs + tol.rel * x[i].abs().max(next[i].abs());
            err = err.max((e / scale).abs());
        }
        if err <= 1.0 {
            t = if last { b } else { t + step };
            x.copy_from_slice(&next);
            k.swap(0, 6);
            traj.times.push(t);
            traj.states.push(x.to_vec());
            traj.stats.steps += 1;
            traj.stats.max_error = traj.stats.max_error.max(err);
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if !last {
                *h = step * factor;
            }
        } else {
            traj.stats.rejected += 1;
            *h = step * (0.9 * err.powf(-0.2)).max(0.1);
        }
    }
    Ok(())
}
