//! Piecewise polynomial functions on `[0, T]`.

use std::fmt;

use num_traits::{One, Zero};

use super::upoly::UPoly;
use super::SignalError;
use crate::rational::{fmt as fmt_q, Q};

/// Breakpoints `0 = t0 < t1 < ... < tn = T` and one polynomial in the global
/// variable `s` per piece. Adjacent equal pieces are merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePoly {
    breaks: Vec<Q>,
    pieces: Vec<UPoly>,
}

impl PiecewisePoly {
    pub fn new(breaks: Vec<Q>, pieces: Vec<UPoly>) -> Result<PiecewisePoly, SignalError> {
        if breaks.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(SignalError::Breakpoints("need one more breakpoint than pieces".into()));
        }
        if !breaks[0].is_zero() {
            return Err(SignalError::Breakpoints("the first breakpoint must be 0".into()));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SignalError::Breakpoints("breakpoints must increase strictly".into()));
        }
        Ok(PiecewisePoly { breaks, pieces }.canonical())
    }

    /// Builds from `(start, end, poly)` triples that tile `[0, T]` in order.
    pub fn from_pieces(pieces: Vec<(Q, Q, UPoly)>) -> Result<PiecewisePoly, SignalError> {
        let mut breaks = Vec::new();
        let mut polys = Vec::new();
        for (i, (a, b, p)) in pieces.into_iter().enumerate() {
            if i == 0 {
                breaks.push(a);
            } else if breaks.last() != Some(&a) {
                return Err(SignalError::Breakpoints(format!("piece {} starts at {} but the previous one ends at {}", i + 1, fmt_q(&a), fmt_q(breaks.last().unwrap()))));
            }
            breaks.push(b);
            polys.push(p);
        }
        PiecewisePoly::new(breaks, polys)
    }

    pub fn polynomial(horizon: &Q, p: UPoly) -> PiecewisePoly {
        PiecewisePoly::new(vec![Q::zero(), horizon.clone()], vec![p]).expect("positive horizon")
    }

    pub fn constant(horizon: &Q, c: Q) -> PiecewisePoly {
        PiecewisePoly::polynomial(horizon, UPoly::constant(c))
    }

    pub fn zero(horizon: &Q) -> PiecewisePoly {
        PiecewisePoly::polynomial(horizon, UPoly::zero())
    }

    fn canonical(mut self) -> PiecewisePoly {
        let mut i = 1;
        while i < self.pieces.len() {
            if self.pieces[i] == self.pieces[i - 1] {
                self.pieces.remove(i);
                self.breaks.remove(i);
            } else {
                i += 1;
            }
        }
        self
    }

    pub fn horizon(&self) -> &Q {
        self.breaks.last().expect("non-empty")
    }

    pub fn breaks(&self) -> &[Q] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[UPoly] {
        &self.pieces
    }

    /// `(start, end, poly)` for each piece.
    pub fn intervals(&self) -> impl Iterator<Item = (&Q, &Q, &UPoly)> {
        self.breaks.windows(2).zip(&self.pieces).map(|(w, p)| (&w[0], &w[1], p))
    }

    /// Index of the piece containing `t`; breakpoints belong to the piece
    /// on their right, except `T`.
    fn piece_index(&self, t: &Q) -> usize {
        let n = self.pieces.len();
        match self.breaks[1..n].iter().position(|b| t < b) {
            Some(i) => i,
            None => n - 1,
        }
    }

    pub fn eval(&self, t: &Q) -> Result<Q, SignalError> {
        self.check_time(t)?;
        Ok(self.pieces[self.piece_index(t)].eval(t))
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let n = self.pieces.len();
        let i = self.breaks[1..n].iter().position(|b| t < crate::rational::to_f64(b)).unwrap_or(n - 1);
        self.pieces[i].eval_f64(t)
    }

    pub fn check_time(&self, t: &Q) -> Result<(), SignalError> {
        if *t < Q::zero() || t > self.horizon() {
            return Err(SignalError::OutOfRange { t: fmt_q(t), horizon: fmt_q(self.horizon()) });
        }
        Ok(())
    }

    /// The same function over a finer breakpoint list containing ours.
    fn on(&self, breaks: &[Q]) -> Vec<UPoly> {
        breaks.windows(2).map(|w| self.pieces[self.piece_index(&w[0])].clone()).collect()
    }

    fn merged_breaks(&self, o: &PiecewisePoly) -> Result<Vec<Q>, SignalError> {
        if self.horizon() != o.horizon() {
            return Err(SignalError::HorizonMismatch { left: fmt_q(self.horizon()), right: fmt_q(o.horizon()) });
        }
        let mut b: Vec<Q> = self.breaks.iter().chain(&o.breaks).cloned().collect();
        b.sort();
        b.dedup();
        Ok(b)
    }

    fn zip_with(&self, o: &PiecewisePoly, f: impl Fn(&UPoly, &UPoly) -> UPoly) -> Result<PiecewisePoly, SignalError> {
        let breaks = self.merged_breaks(o)?;
        let (a, b) = (self.on(&breaks), o.on(&breaks));
        let pieces = a.iter().zip(&b).map(|(x, y)| f(x, y)).collect();
        PiecewisePoly::new(breaks, pieces)
    }

    pub fn add(&self, o: &PiecewisePoly) -> Result<PiecewisePoly, SignalError> {
        self.zip_with(o, UPoly::add)
    }

    pub fn sub(&self, o: &PiecewisePoly) -> Result<PiecewisePoly, SignalError> {
        self.zip_with(o, UPoly::sub)
    }

    pub fn mul(&self, o: &PiecewisePoly) -> Result<PiecewisePoly, SignalError> {
        self.zip_with(o, UPoly::mul)
    }

    pub fn scale(&self, c: &Q) -> PiecewisePoly {
        PiecewisePoly { breaks: self.breaks.clone(), pieces: self.pieces.iter().map(|p| p.scale(c)).collect() }.canonical()
    }

    pub fn pow(&self, e: usize) -> PiecewisePoly {
        PiecewisePoly { breaks: self.breaks.clone(), pieces: self.pieces.iter().map(|p| p.pow(e)).collect() }.canonical()
    }

    /// Multiplies every piece by the same polynomial.
    pub fn mul_poly(&self, p: &UPoly) -> PiecewisePoly {
        PiecewisePoly { breaks: self.breaks.clone(), pieces: self.pieces.iter().map(|x| x.mul(p)).collect() }.canonical()
    }

    /// Piecewise derivative.
    pub fn derivative(&self) -> PiecewisePoly {
        PiecewisePoly { breaks: self.breaks.clone(), pieces: self.pieces.iter().map(UPoly::derivative).collect() }.canonical()
    }

    /// The continuous primitive vanishing at 0.
    pub fn primitive(&self) -> PiecewisePoly {
        let mut acc = Q::zero();
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (a, b, p) in self.intervals() {
            let anti = p.antiderivative();
            let shift = &acc - anti.eval(a);
            pieces.push(anti.add(&UPoly::constant(shift)));
            acc += p.integrate(a, b);
        }
        PiecewisePoly { breaks: self.breaks.clone(), pieces }.canonical()
    }

    /// `u_j`: the `j`-th iterated primitive (`u_0 = u`).
    pub fn iterated_primitive(&self, j: usize) -> PiecewisePoly {
        let mut out = self.clone();
        for _ in 0..j {
            out = out.primitive();
        }
        out
    }

    /// `int_0^t`.
    pub fn integral_to(&self, t: &Q) -> Result<Q, SignalError> {
        self.check_time(t)?;
        let mut acc = Q::zero();
        for (a, b, p) in self.intervals() {
            if a >= t {
                break;
            }
            let end = if b < t { b } else { t };
            acc += p.integrate(a, end);
        }
        Ok(acc)
    }

    pub fn integral(&self) -> Q {
        self.intervals().map(|(a, b, p)| p.integrate(a, b)).sum()
    }

    /// The restriction to `[0, t]`.
    pub fn restrict(&self, t: &Q) -> Result<PiecewisePoly, SignalError> {
        self.check_time(t)?;
        if t.is_zero() {
            return Err(SignalError::OutOfRange { t: "0".into(), horizon: fmt_q(self.horizon()) });
        }
        let mut breaks = vec![Q::zero()];
        let mut pieces = Vec::new();
        for (_, b, p) in self.intervals() {
            pieces.push(p.clone());
            if b >= t {
                breaks.push(t.clone());
                break;
            }
            breaks.push(b.clone());
        }
        PiecewisePoly::new(breaks, pieces)
    }

    /// Jumps of the derivatives of order `0..order` at interior breakpoints:
    /// the first `(order, breakpoint)` that is discontinuous, if any.
    pub fn first_discontinuity(&self, order: usize) -> Option<(usize, Q)> {
        for k in 0..order {
            let d: Vec<UPoly> = self.pieces.iter().map(|p| (0..k).fold(p.clone(), |q, _| q.derivative())).collect();
            for (i, b) in self.breaks[1..self.pieces.len()].iter().enumerate() {
                if d[i].eval(b) != d[i + 1].eval(b) {
                    return Some((k, b.clone()));
                }
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(UPoly::is_zero)
    }
}

impl fmt::Display for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b, p)) in self.intervals().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "piece {}..{}: {}", fmt_q(a), fmt_q(b), p)?;
        }
        Ok(())
    }
}

/// The two controls on a common horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlPair {
    u: PiecewisePoly,
    v: PiecewisePoly,
}

impl ControlPair {
    pub fn new(u: PiecewisePoly, v: PiecewisePoly) -> Result<ControlPair, SignalError> {
        if u.horizon() != v.horizon() {
            return Err(SignalError::HorizonMismatch { left: fmt_q(u.horizon()), right: fmt_q(v.horizon()) });
        }
        Ok(ControlPair { u, v })
    }

    pub fn zero(horizon: &Q) -> ControlPair {
        ControlPair { u: PiecewisePoly::zero(horizon), v: PiecewisePoly::zero(horizon) }
    }

    pub fn constant(horizon: &Q, u: Q, v: Q) -> ControlPair {
        ControlPair { u: PiecewisePoly::constant(horizon, u), v: PiecewisePoly::constant(horizon, v) }
    }

    pub fn u(&self) -> &PiecewisePoly {
        &self.u
    }

    pub fn v(&self) -> &PiecewisePoly {
        &self.v
    }

    pub fn horizon(&self) -> &Q {
        self.u.horizon()
    }

    /// All breakpoints of either control.
    pub fn breaks(&self) -> Vec<Q> {
        self.u.merged_breaks(&self.v).expect("common horizon")
    }

    pub fn scale(&self, c: &Q) -> ControlPair {
        ControlPair { u: self.u.scale(c), v: self.v.scale(c) }
    }
}

/// `s / T`-style rescaling helper: `p(s / t)` as a polynomial in `s`.
pub fn rescale(p: &UPoly, t: &Q) -> UPoly {
    let inv = Q::one() / t;
    let mut f = Q::one();
    UPoly::new(
        p.coeffs()
            .iter()
            .map(|c| {
                let out = c * &f;
                f *= &inv;
                out
            })
            .collect(),
    )
}
