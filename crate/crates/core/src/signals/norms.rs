//! Lebesgue and Sobolev norms of piecewise polynomials.
//!
//! `L^2` is computed exactly (as a square). `L^1` and `L^inf` come with a
//! rational enclosure whose only error is the root isolation width. Other
//! exponents are integrated numerically.

use num_traits::{One, Signed, Zero};

use super::piecewise::PiecewisePoly;
use super::upoly::UPoly;
use super::SignalError;
use crate::rational::{fmt as fmt_q, to_f64, Q};

/// Target relative accuracy of numeric `L^p` integrals.
pub const LP_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Space {
    L1,
    L2,
    Linf,
    /// `L^p` for a finite `p >= 1`.
    Lp(f64),
    /// `||u||_{L^p} + ... + ||u^(m)||_{L^p}`; `p` may be infinite.
    Wmp { m: usize, p: f64 },
}

/// A norm value, with a rational enclosure when the computation is exact up
/// to root isolation.
#[derive(Clone, Debug, PartialEq)]
pub struct NormValue {
    pub value: f64,
    pub enclosure: Option<(Q, Q)>,
}

impl NormValue {
    fn enclosed(lo: Q, hi: Q) -> NormValue {
        NormValue { value: to_f64(&((&lo + &hi) / Q::from_integer(2.into()))), enclosure: Some((lo, hi)) }
    }
}

fn isolation_width(u: &PiecewisePoly) -> Q {
    u.horizon() / Q::from_integer((1u64 << 62).into())
}

/// `int_0^T u^2`, exact.
pub fn l2_squared(u: &PiecewisePoly) -> Q {
    u.intervals().map(|(a, b, p)| p.mul(p).integrate(a, b)).sum()
}

/// Rational interval around `sqrt(x)` of width at most `eps`.
pub fn sqrt_enclosure(x: &Q, eps: &Q) -> (Q, Q) {
    assert!(!x.is_negative());
    let (mut lo, mut hi) = (Q::zero(), x.clone().max(Q::one()));
    let two = Q::from_integer(2.into());
    while &(&hi - &lo) > eps {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn piece_l1(p: &UPoly, a: &Q, b: &Q, eps: &Q) -> (Q, Q) {
    let roots = p.isolate_roots(a, b, eps);
    let two = Q::from_integer(2.into());
    let mut cuts = vec![a.clone()];
    let mut slack = Q::zero();
    for (lo, hi) in &roots {
        cuts.push((lo + hi) / &two);
        slack += hi - lo;
    }
    cuts.push(b.clone());
    let value: Q = cuts.windows(2).map(|w| p.integrate(&w[0], &w[1]).abs()).sum();
    let err = p.abs_bound(a, b) * slack;
    let lo = (&value - &err).max(Q::zero());
    (lo, value + err)
}

fn piece_linf(p: &UPoly, a: &Q, b: &Q, eps: &Q) -> (Q, Q) {
    let mut lo = p.eval(a).abs().max(p.eval(b).abs());
    let mut hi = lo.clone();
    let dp = p.derivative();
    let slope = dp.abs_bound(a, b);
    let two = Q::from_integer(2.into());
    for (l, h) in dp.isolate_roots(a, b, eps) {
        let mid = (&l + &h) / &two;
        let v = p.eval(&mid).abs();
        let bound = &v + &slope * (&h - &l) / &two;
        if v > lo {
            lo = v;
        }
        if bound > hi {
            hi = bound;
        }
    }
    (lo, hi)
}

/// Rational enclosure of `||u||_{L^1}`.
pub fn l1_enclosure(u: &PiecewisePoly) -> (Q, Q) {
    let eps = isolation_width(u);
    u.intervals().fold((Q::zero(), Q::zero()), |(lo, hi), (a, b, p)| {
        let (l, h) = piece_l1(p, a, b, &eps);
        (lo + l, hi + h)
    })
}

/// Rational enclosure of `||u||_{L^inf}`.
pub fn linf_enclosure(u: &PiecewisePoly) -> (Q, Q) {
    let eps = isolation_width(u);
    u.intervals().fold((Q::zero(), Q::zero()), |(lo, hi), (a, b, p)| {
        let (l, h) = piece_linf(p, a, b, &eps);
        (lo.max(l), hi.max(h))
    })
}

#[allow(clippy::too_many_arguments)]
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

fn integrate_numeric(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// `||u||_{L^p}` by adaptive quadrature, split at the roots of each piece.
pub fn lp_numeric(u: &PiecewisePoly, p: f64) -> f64 {
    let eps = isolation_width(u);
    // Scale for the tolerance: the L^inf norm to the power p times T.
    let scale = to_f64(&linf_enclosure(u).1).powf(p) * to_f64(u.horizon());
    let tol = (LP_TOLERANCE * scale).max(f64::MIN_POSITIVE);
    let two = Q::from_integer(2.into());
    let mut total = 0.0;
    for (a, b, poly) in u.intervals() {
        let mut cuts = vec![to_f64(a)];
        cuts.extend(poly.isolate_roots(a, b, &eps).iter().map(|(l, h)| to_f64(&((l + h) / &two))));
        cuts.push(to_f64(b));
        let f = |x: f64| poly.eval_f64(x).abs().powf(p);
        for w in cuts.windows(2) {
            if w[1] > w[0] {
                total += integrate_numeric(&f, w[0], w[1], tol);
            }
        }
    }
    total.powf(1.0 / p)
}

fn single(u: &PiecewisePoly, p: f64) -> NormValue {
    if p == 1.0 {
        let (lo, hi) = l1_enclosure(u);
        NormValue::enclosed(lo, hi)
    } else if p == 2.0 {
        let (lo, hi) = sqrt_enclosure(&l2_squared(u), &isolation_width(u));
        NormValue::enclosed(lo, hi)
    } else if p.is_infinite() {
        let (lo, hi) = linf_enclosure(u);
        NormValue::enclosed(lo, hi)
    } else {
        NormValue { value: lp_numeric(u, p), enclosure: None }
    }
}

pub fn norm(u: &PiecewisePoly, space: Space) -> Result<NormValue, SignalError> {
    match space {
        Space::L1 => Ok(single(u, 1.0)),
        Space::L2 => Ok(single(u, 2.0)),
        Space::Linf => Ok(single(u, f64::INFINITY)),
        Space::Lp(p) => {
            if p.is_nan() || p < 1.0 {
                return Err(SignalError::Precondition(format!("L^p needs p >= 1, got {p}")));
            }
            Ok(single(u, p))
        }
        Space::Wmp { m, p } => {
            if p.is_nan() || p < 1.0 {
                return Err(SignalError::Precondition(format!("W^(m,p) needs p >= 1, got {p}")));
            }
            if let Some((order, at)) = u.first_discontinuity(m) {
                return Err(SignalError::Regularity { order, at: fmt_q(&at) });
            }
            let mut d = u.clone();
            let mut value = 0.0;
            let mut enclosure = Some((Q::zero(), Q::zero()));
            for _ in 0..=m {
                let n = single(&d, p);
                value += n.value;
                enclosure = match (enclosure, n.enclosure) {
                    (Some((lo, hi)), Some((l, h))) => Some((lo + l, hi + h)),
                    _ => None,
                };
                d = d.derivative();
            }
            if let Some((lo, hi)) = &enclosure {
                value = to_f64(&((lo + hi) / Q::from_integer(2.into())));
            }
            Ok(NormValue { value, enclosure })
        }
    }
}
