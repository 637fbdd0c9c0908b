//! Sign condition for a quartic drift competing between five brackets.
//!
//! A form `P` vanishing on `N` is sought with
//! `3|P(e1)| + |P(e3)| < P(e0)`, `|P(e1)| + 3|P(e3)| < P(e4)` and
//! `P(e2) >= 0`. Fixing the signs of `P(e1)` and `P(e3)` makes every
//! constraint linear and homogeneous, so strict inequalities can be
//! replaced by `>= 1`. Each of the four sign patterns is then a linear
//! feasibility problem, decided exactly by Fourier-Motzkin elimination in
//! the (at most five dimensional) span of the quotient images.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::linalg::{express, solve_form};
use crate::rational::{primitive, serde_q, Q};
use crate::vectorfields::{apply_form, FieldError, RationalSubspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticOutcome {
    pub holds: bool,
    #[serde(serialize_with = "serde_q::opt_vector")]
    pub witness: Option<Vec<Q>>,
    /// Signs chosen for `(P(e1), P(e3))` when a witness was found.
    pub sign_pattern: Option<(i8, i8)>,
}

/// Whether `p` satisfies the quartic inequalities and vanishes on `span`.
pub fn is_quartic_witness(e: &[Vec<Q>; 5], span: &RationalSubspace, p: &[Q]) -> bool {
    let v: Vec<Q> = e.iter().map(|x| apply_form(p, x)).collect();
    let three = Q::from_integer(3.into());
    span.rows().iter().all(|r| apply_form(p, r).is_zero())
        && &three * v[1].abs() + v[3].abs() < v[0]
        && v[1].abs() + &three * v[3].abs() < v[4]
        && !v[2].is_negative()
}

/// `coeffs . x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Constraint {
    coeffs: Vec<Q>,
    rhs: Q,
}

/// Eliminates the variables from last to first. Returns a feasible point or
/// `None`.
fn fourier_motzkin(constraints: Vec<Constraint>, nvars: usize) -> Option<Vec<Q>> {
    // stages[j] holds the system in variables 0..=j.
    let mut stages: Vec<Vec<Constraint>> = vec![Vec::new(); nvars];
    let mut current = constraints;
    for j in (0..nvars).rev() {
        stages[j] = current.clone();
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for c in current {
            if c.coeffs[j].is_positive() {
                pos.push(c);
            } else if c.coeffs[j].is_negative() {
                neg.push(c);
            } else {
                next.push(c);
            }
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (Q::one() / &p.coeffs[j], Q::one() / -&n.coeffs[j]);
                let coeffs: Vec<Q> = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| a * &sp + b * &sn).collect();
                let c = Constraint { coeffs, rhs: &p.rhs * &sp + &n.rhs * &sn };
                if !next.contains(&c) {
                    next.push(c);
                }
            }
        }
        current = next;
    }
    if current.iter().any(|c| c.rhs.is_positive()) {
        return None;
    }
    let mut x = vec![Q::zero(); nvars];
    for j in 0..nvars {
        let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
        for c in &stages[j] {
            let a = &c.coeffs[j];
            if a.is_zero() {
                continue;
            }
            let rest: Q = (0..j).map(|i| &c.coeffs[i] * &x[i]).sum();
            let bound = (&c.rhs - rest) / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| if bound > l { bound.clone() } else { l }));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| if bound < h { bound.clone() } else { h }));
            }
        }
        x[j] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h.min(Q::zero()),
            (None, None) => Q::zero(),
        };
    }
    Some(x)
}

/// Searches for a form satisfying the quartic inequalities.
pub fn quartic_bc_check(e: &[Vec<Q>; 5], span: &RationalSubspace) -> Result<QuarticOutcome, FieldError> {
    let q: Vec<Vec<Q>> = e.iter().map(|v| span.quotient_image(v)).collect::<Result<_, _>>()?;
    let r = q[0].len();
    // Independent subset of the images; a form on the span is fixed by its
    // values `y` on this subset.
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..5 {
        let basis: Vec<&[Q]> = chosen.iter().map(|&c| q[c].as_slice()).collect();
        let inside = if q[i].iter().all(Zero::is_zero) {
            true
        } else {
            !basis.is_empty() && express(&q[i], &basis).is_some()
        };
        if !inside {
            chosen.push(i);
        }
    }
    let basis: Vec<&[Q]> = chosen.iter().map(|&c| q[c].as_slice()).collect();
    let s = chosen.len();
    // P(e_i) = coords[i] . y
    let coords: Vec<Vec<Q>> =
        q.iter().map(|v| if s == 0 { Vec::new() } else { express(v, &basis).expect("spanned by the chosen images") }).collect();
    let three = Q::from_integer(3.into());
    let combine = |terms: &[(&Q, usize)]| -> Vec<Q> {
        let mut out = vec![Q::zero(); s];
        for (c, i) in terms {
            for (o, x) in out.iter_mut().zip(&coords[*i]) {
                *o += *c * x;
            }
        }
        out
    };
    for (s1, s3) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        let (a1, a3) = (Q::from_integer(s1.into()), Q::from_integer(s3.into()));
        let one = Q::one();
        let cons = vec![
            Constraint { coeffs: combine(&[(&a1, 1)]), rhs: Q::zero() },
            Constraint { coeffs: combine(&[(&a3, 3)]), rhs: Q::zero() },
            Constraint { coeffs: combine(&[(&one, 0), (&(-&three * &a1), 1), (&-&a3, 3)]), rhs: Q::one() },
            Constraint { coeffs: combine(&[(&one, 4), (&-&a1, 1), (&(-&three * &a3), 3)]), rhs: Q::one() },
            Constraint { coeffs: combine(&[(&one, 2)]), rhs: Q::zero() },
        ];
        if s == 0 {
            continue;
        }
        let Some(y) = fourier_motzkin(cons, s) else {
            continue;
        };
        let c = solve_form(&basis, &y, r).expect("independent images");
        let witness = primitive(&span.lift_form(&c));
        debug_assert!(is_quartic_witness(e, span, &witness));
        return Ok(QuarticOutcome { holds: true, witness: Some(witness), sign_pattern: Some((s1, s3)) });
    }
    Ok(QuarticOutcome { holds: false, witness: None, sign_pattern: None })
}
