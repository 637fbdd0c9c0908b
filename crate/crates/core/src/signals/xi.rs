//! Coordinates of the second kind.

use std::collections::HashMap;

use super::piecewise::{ControlPair, PiecewisePoly};
use super::upoly::UPoly;
use super::SignalError;
use crate::freelie::{hall_decompose, Bracket, Control, Family, Generator};
use crate::rational::{factorial, Q};

/// Computes `xi_b` as functions of time for one control pair, caching every
/// bracket met along the recursion.
#[derive(Debug)]
pub struct XiSession {
    controls: ControlPair,
    cache: HashMap<Bracket, PiecewisePoly>,
}

impl XiSession {
    pub fn new(controls: ControlPair) -> XiSession {
        XiSession { controls, cache: HashMap::new() }
    }

    pub fn controls(&self) -> &ControlPair {
        &self.controls
    }

    /// `xi_b` on `[0, T]`:
    /// `xi_X0 = t`, `xi_X1 = u_1`, `xi_X2 = v_1`, and for
    /// `b = ad_{b1}^m (b2)`, `xi_b = (1/m!) int_0^t xi_b1^m xi_b2'`.
    pub fn function(&mut self, b: &Bracket) -> Result<PiecewisePoly, SignalError> {
        if let Some(f) = self.cache.get(b) {
            return Ok(f.clone());
        }
        let f = match b.generator() {
            Some(Generator::X0) => PiecewisePoly::polynomial(self.controls.horizon(), UPoly::s()),
            Some(Generator::X1) => self.controls.u().primitive(),
            Some(Generator::X2) => self.controls.v().primitive(),
            None => {
                if !b.is_hall() {
                    return Err(SignalError::NotHall(b.to_string()));
                }
                let (b1, b2, m) = hall_decompose(b).expect("pair");
                let f1 = self.function(&b1)?;
                let f2 = self.function(&b2)?;
                f1.pow(m).mul(&f2.derivative())?.primitive().scale(&(Q::from_integer(1.into()) / factorial(m)))
            }
        };
        self.cache.insert(b.clone(), f.clone());
        Ok(f)
    }

    pub fn xi(&mut self, b: &Bracket, t: &Q) -> Result<Q, SignalError> {
        self.controls.u().check_time(t)?;
        self.function(b)?.eval(t)
    }
}

/// One-shot `xi_b(t)`.
pub fn xi(b: &Bracket, t: &Q, controls: &ControlPair) -> Result<Q, SignalError> {
    XiSession::new(controls.clone()).xi(b, t)
}

fn primitive_of(controls: &ControlPair, control: Control, j: usize) -> PiecewisePoly {
    match control {
        Control::U => controls.u().iterated_primitive(j),
        Control::V => controls.v().iterated_primitive(j),
    }
}

/// `int_0^t (t-s)^l / l! g(s) ds`.
fn kernel_integral(g: &PiecewisePoly, l: usize, t: &Q) -> Result<Q, SignalError> {
    g.mul_poly(&UPoly::kernel(t, l)).integral_to(t)
}

/// Integrand `g` with `xi_{F 0^l} = int_0^t (t-s)^l/l! g(s) ds` for the
/// quadratic families.
fn quadratic_integrand(family: &Family, controls: &ControlPair) -> Result<Option<(PiecewisePoly, usize)>, SignalError> {
    let half = Q::new(1.into(), 2.into());
    Ok(match *family {
        Family::M { .. } => None,
        Family::W { control, j, l } => Some((primitive_of(controls, control, j).pow(2).scale(&half), l)),
        Family::C { j, l } => {
            let u = primitive_of(controls, Control::U, j / 2 + 1);
            let v = primitive_of(controls, Control::V, j.div_ceil(2));
            Some((u.mul(&v)?, l))
        }
    })
}

/// Closed forms of `xi` on the `M`, `W` and `C` families.
pub fn xi_closed_form(family: &Family, t: &Q, controls: &ControlPair) -> Result<Q, SignalError> {
    controls.u().check_time(t)?;
    match *family {
        Family::M { control, j } => primitive_of(controls, control, j + 1).eval(t),
        _ => {
            let (g, l) = quadratic_integrand(family, controls)?.expect("quadratic family");
            kernel_integral(&g, l, t)
        }
    }
}

/// Boundary terms and remainder of the integration by parts of
/// `xi_{C_{j,l}}`; they sum to `xi_{C_{j,l}}(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IppSplit {
    pub boundary: Vec<Q>,
    pub remainder: Q,
}

impl IppSplit {
    pub fn total(&self) -> Q {
        self.boundary.iter().sum::<Q>() + &self.remainder
    }
}

/// Integrates `xi_{C_{j,l}}` by parts `n + 1` times, moving derivatives onto
/// `v_b (t - s)^l / l!` with `b = ceil(j/2)`. `n = None` means no
/// integration by parts. Requires `n <= floor((j+1)/2) - 1`.
pub fn xi_ipp(j: usize, l: usize, n: Option<usize>, t: &Q, controls: &ControlPair) -> Result<IppSplit, SignalError> {
    controls.u().check_time(t)?;
    let b = j.div_ceil(2);
    if let Some(n) = n {
        if n + 1 > b {
            return Err(SignalError::Precondition(format!("N = {n} exceeds floor((j+1)/2) - 1 = {}", b as i64 - 1)));
        }
    }
    let a = j / 2 + 1;
    let g = primitive_of(controls, Control::V, b).mul_poly(&UPoly::kernel(t, l));
    let Some(n) = n else {
        return Ok(IppSplit { boundary: Vec::new(), remainder: primitive_of(controls, Control::U, a).mul(&g)?.integral_to(t)? });
    };
    let mut boundary = Vec::with_capacity(n + 1);
    let mut dg = g;
    for mu in 0..=n {
        let sign = if mu % 2 == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
        let term = primitive_of(controls, Control::U, a + mu + 1).eval(t)? * dg.eval(t)? * sign;
        boundary.push(term);
        dg = dg.derivative();
    }
    let sign = if (n + 1) % 2 == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
    let remainder = primitive_of(controls, Control::U, a + n + 1).mul(&dg)?.integral_to(t)? * sign;
    Ok(IppSplit { boundary, remainder })
}

/// Values of `int_0^t u_1^{4-i} v_1^i / (i! (4-i)!)` for `i = 0..=4`.
pub fn quartic_functionals(controls: &ControlPair, t: &Q) -> Result<Vec<Q>, SignalError> {
    let (u1, v1) = (controls.u().primitive(), controls.v().primitive());
    (0..=4)
        .map(|i| {
            let g = u1.pow(4 - i).mul(&v1.pow(i))?;
            Ok(g.integral_to(t)? / (factorial(i) * factorial(4 - i)))
        })
        .collect()
}
