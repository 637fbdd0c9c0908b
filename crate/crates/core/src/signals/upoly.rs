//! Univariate rational polynomials with real-root isolation.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{fmt as fmt_q, to_f64, Q};

/// Dense polynomial `sum c_i s^i`; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> UPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    pub fn constant(c: Q) -> UPoly {
        UPoly::new(vec![c])
    }

    /// The identity `s`.
    pub fn s() -> UPoly {
        UPoly(vec![Q::zero(), Q::one()])
    }

    /// `(c - s)^l / l!`.
    pub fn kernel(c: &Q, l: usize) -> UPoly {
        let base = UPoly::new(vec![c.clone(), -Q::one()]);
        let mut out = UPoly::constant(Q::one());
        for i in 1..=l {
            out = out.mul(&base).scale(&(Q::one() / Q::from_integer(i.into())));
        }
        out
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        UPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> UPoly {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut out = UPoly::constant(Q::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer(i.into())).collect())
    }

    /// Antiderivative vanishing at `s = 0`.
    pub fn antiderivative(&self) -> UPoly {
        let mut out = vec![Q::zero()];
        out.extend(self.0.iter().enumerate().map(|(i, c)| c / Q::from_integer((i + 1).into())));
        UPoly::new(out)
    }

    /// `int_a^b p(s) ds`.
    pub fn integrate(&self, a: &Q, b: &Q) -> Q {
        let p = self.antiderivative();
        p.eval(b) - p.eval(a)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let lead = d.leading();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            for (j, dj) in d.0.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        (UPoly::new(q), UPoly::new(r))
    }

    fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Same roots, each simple.
    pub fn square_free(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Upper bound of `|p|` on `[a, b]`.
    pub fn abs_bound(&self, a: &Q, b: &Q) -> Q {
        let r = a.abs().max(b.abs());
        let mut acc = Q::zero();
        let mut pow = Q::one();
        for c in &self.0 {
            acc += c.abs() * &pow;
            pow *= &r;
        }
        acc
    }

    /// Disjoint intervals `[lo, hi]` inside the open interval `(a, b)`,
    /// each containing exactly one real root, of width at most `eps`.
    /// Exact rational roots come back as degenerate intervals.
    pub fn isolate_roots(&self, a: &Q, b: &Q, eps: &Q) -> Vec<(Q, Q)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let p = self.square_free();
        let sturm = sturm_sequence(&p);
        let count = |x: &Q| sign_changes(&sturm, x);
        let mut out = Vec::new();
        // Roots in (lo, hi] via the Sturm count.
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((lo, hi)) = stack.pop() {
            let mut n = count(&lo) - count(&hi);
            if &hi == b && p.eval(b).is_zero() {
                n -= 1;
            }
            if n == 0 {
                continue;
            }
            if n == 1 {
                let end = if p.eval(&hi).is_zero() { (hi.clone(), hi) } else { refine(&p, lo, hi, eps) };
                out.push(end);
                continue;
            }
            let mid = (&lo + &hi) / Q::from_integer(2.into());
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out.sort();
        out
    }
}

fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1.scale(&-Q::one());
        if r.is_zero() {
            return seq;
        }
        seq.push(r);
    }
}

fn sign_changes(seq: &[UPoly], x: &Q) -> i64 {
    let mut prev = 0;
    let mut changes = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            changes += 1;
        }
        prev = s;
    }
    changes
}

/// Bisection on a simple root of the square-free `p` in `(lo, hi)`.
fn refine(p: &UPoly, mut lo: Q, mut hi: Q, eps: &Q) -> (Q, Q) {
    let two = Q::from_integer(2.into());
    let sign = |x: &Q| p.eval(x).signum();
    let s_hi = sign(&hi);
    while &(&hi - &lo) > eps {
        let mid = (&lo + &hi) / &two;
        let s = sign(&mid);
        if s.is_zero() {
            return (mid.clone(), mid);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => f.write_str(&fmt_q(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", fmt_q(&a))?;
                    }
                    if i == 1 {
                        f.write_str("s")?;
                    } else {
                        write!(f, "s^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
