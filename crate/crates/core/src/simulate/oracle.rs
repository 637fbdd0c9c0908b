//! Exact states of the nilpotent corpus systems as polynomials in the
//! coordinates of the second kind.

use num_traits::Zero;

use super::SimError;
use crate::corpus;
use crate::freelie::{c, m, w, Bracket, Control};
use crate::rational::{int, ratio, Q};
use crate::signals::{ControlPair, XiSession};
use crate::vectorfields::PolySystem;

/// `sum coeff * prod xi_b` for one coordinate.
pub type XiPolynomial = Vec<(Q, Vec<Bracket>)>;

/// A corpus system together with its state formula.
#[derive(Clone, Debug)]
pub struct RegisteredSystem {
    pub system: PolySystem,
    pub coordinates: Vec<XiPolynomial>,
}

fn single(b: Bracket) -> XiPolynomial {
    vec![(int(1), vec![b])]
}

fn ad_power(x: Bracket, times: usize, y: Bracket) -> Bracket {
    (0..times).fold(y, |acc, _| Bracket::pair(x.clone(), acc))
}

fn coefficient_of(system: &PolySystem, field: usize, comp: usize, exponents: &[u32]) -> Q {
    system.field(field).components()[comp]
        .terms()
        .find(|(mono, _)| mono.exponents() == exponents)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Q::zero)
}

fn jouet_formula(alpha: &Q) -> Vec<XiPolynomial> {
    vec![
        single(Bracket::x1()),
        single(Bracket::x2()),
        vec![(int(2), vec![w(Control::U, 1, 0)]), (int(2), vec![w(Control::V, 1, 0)]), (alpha.clone(), vec![c(1, 0)])],
    ]
}

fn integrators_formula(k: usize, kp: usize, alpha: &Q) -> Option<Vec<XiPolynomial>> {
    let cross = match k as i64 - kp as i64 {
        0 => c(2 * k - 1, 0),
        1 => c(2 * kp, 0),
        _ => return None,
    };
    let mut out: Vec<XiPolynomial> = (0..k).map(|j| single(m(Control::U, j))).collect();
    out.extend((0..kp).map(|j| single(m(Control::V, j))));
    out.push(vec![(int(2), vec![w(Control::U, k, 0)]), (int(2), vec![w(Control::V, kp, 0)]), (alpha.clone(), vec![cross])]);
    Some(out)
}

/// Finds the registered formula matching `system`, comparing fields exactly.
pub fn registered(system: &PolySystem) -> Result<RegisteredSystem, SimError> {
    let unregistered = || SimError::Unregistered(system.name().to_string());
    let d = system.dim();
    let (reference, coordinates) = match system.name() {
        "jouet" if d == 3 => {
            let alpha = coefficient_of(system, 0, 2, &[1, 1, 0]);
            (corpus::jouet(&alpha), jouet_formula(&alpha))
        }
        "integrators" if d >= 3 => {
            let k = system.field(2).components().iter().position(|p| !p.is_zero()).ok_or_else(unregistered)?;
            let kp = d - 1 - k;
            let mut e = vec![0; d];
            e[k - 1] = 1;
            e[d - 2] = 1;
            let alpha = coefficient_of(system, 0, d - 1, &e);
            let formula = integrators_formula(k, kp, &alpha).ok_or_else(unregistered)?;
            (corpus::integrators(k, kp, &alpha), formula)
        }
        "excomplexe" => {
            let (x1, x2) = (Bracket::x1(), Bracket::x2());
            let x4 = vec![
                (int(2), vec![w(Control::U, 1, 0)]),
                (int(4), vec![w(Control::V, 1, 0)]),
                (ratio(1, 2), vec![c(1, 0)]),
                (int(-2056), vec![w(Control::U, 2, 0)]),
                (int(-1286), vec![ad_power(x1.clone(), 2, x2.clone())]),
                (int(-1), vec![x2.clone(), x2.clone()]),
            ];
            (corpus::excomplexe(), vec![single(x1), single(m(Control::U, 1)), single(x2), x4])
        }
        "exf1f2" => {
            let x5 = vec![(int(1), vec![w(Control::U, 1, 0)]), (int(1), vec![w(Control::V, 1, 0)]), (int(1), vec![c(0, 2)])];
            (corpus::exf1f2(), vec![single(Bracket::x1()), single(Bracket::x2()), single(c(0, 0)), single(c(0, 1)), x5])
        }
        "exquartic" => {
            let quartic = |x: Bracket| ad_power(x, 4, Bracket::x0());
            let x3 = vec![(int(24), vec![quartic(Bracket::x1())]), (int(24), vec![quartic(Bracket::x2())])];
            (corpus::exquartic(), vec![single(Bracket::x1()), single(Bracket::x2()), x3])
        }
        "exassym" => {
            let x4 = vec![(int(2), vec![w(Control::U, 2, 0)]), (int(2), vec![w(Control::V, 1, 0)])];
            (corpus::exassym(), vec![single(Bracket::x1()), single(m(Control::U, 1)), single(Bracket::x2()), x4])
        }
        _ => return Err(unregistered()),
    };
    if (0..3).any(|i| system.field(i) != reference.field(i)) {
        return Err(unregistered());
    }
    Ok(RegisteredSystem { system: reference, coordinates })
}

fn evaluate(formula: &[XiPolynomial], session: &mut XiSession, t: &Q, max_len: Option<usize>) -> Result<Vec<Q>, SimError> {
    let mut out = Vec::with_capacity(formula.len());
    for coord in formula {
        let mut acc = Q::zero();
        for (coeff, factors) in coord {
            if max_len.is_some_and(|cap| factors.iter().map(Bracket::len).sum::<usize>() > cap) {
                continue;
            }
            let mut term = coeff.clone();
            for b in factors {
                term *= session.xi(b, t)?;
            }
            acc += term;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Exact state `x(t)` of a registered corpus system.
pub fn exact_state_oracle(system: &PolySystem, controls: &ControlPair, t: &Q) -> Result<Vec<Q>, SimError> {
    let reg = registered(system)?;
    evaluate(&reg.coordinates, &mut XiSession::new(controls.clone()), t, None)
}

/// The state formula keeping only products of total bracket length at most
/// `max_len`.
pub fn truncated_state(system: &PolySystem, controls: &ControlPair, t: &Q, max_len: usize) -> Result<Vec<Q>, SimError> {
    let reg = registered(system)?;
    evaluate(&reg.coordinates, &mut XiSession::new(controls.clone()), t, Some(max_len))
}
