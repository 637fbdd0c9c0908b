//! The worked example systems, built directly in code.
//!
//! The CLI ships the same systems as `.sys` files; tests check that both
//! encodings agree.

use num_traits::One;

use crate::rational::{int, ratio, Q};
use crate::vectorfields::{Poly, PolySystem, PolyVectorField};

fn x(d: usize, i: usize) -> Poly {
    Poly::var(d, i - 1)
}

fn field(d: usize, comps: Vec<(usize, Poly)>) -> PolyVectorField {
    let mut out = vec![Poly::zero(d); d];
    for (i, p) in comps {
        out[i - 1] = out[i - 1].add(&p);
    }
    PolyVectorField::new(out)
}

fn one(d: usize) -> Poly {
    Poly::constant(d, Q::one())
}

fn build(name: &str, f0: PolyVectorField, f1: PolyVectorField, f2: PolyVectorField) -> PolySystem {
    PolySystem::new(name, f0, f1, f2).expect("corpus systems are well formed")
}

/// `x1' = u, x2' = v, x3' = x1^2 + x2^2 + alpha x1 x2`.
pub fn jouet(alpha: &Q) -> PolySystem {
    let d = 3;
    let f0 = field(d, vec![(3, x(d, 1).pow(2).add(&x(d, 2).pow(2)).add(&x(d, 1).mul(&x(d, 2)).scale(alpha)))]);
    build("jouet", f0, field(d, vec![(1, one(d))]), field(d, vec![(2, one(d))]))
}

/// Two integrator chains of lengths `k` (driven by `u`) and `kp` (driven by
/// `v`) feeding `z' = x_k^2 + y_kp^2 + alpha x_k y_kp`.
///
/// Coordinates: `x_1..x_k`, then `y_1..y_kp`, then `z`.
pub fn integrators(k: usize, kp: usize, alpha: &Q) -> PolySystem {
    assert!(k >= 1 && kp >= 1);
    let d = k + kp + 1;
    let mut f0 = Vec::new();
    for i in 2..=k {
        f0.push((i, x(d, i - 1)));
    }
    for i in 2..=kp {
        f0.push((k + i, x(d, k + i - 1)));
    }
    let xk = x(d, k);
    let yk = x(d, k + kp);
    f0.push((d, xk.pow(2).add(&yk.pow(2)).add(&xk.mul(&yk).scale(alpha))));
    build("integrators", field(d, f0), field(d, vec![(1, one(d))]), field(d, vec![(k + 1, one(d))]))
}

/// `x1' = u, x2' = x1, x3' = v`,
/// `x4' = x1^2 + 2 x3^2 + x1 x3 / 2 - 1028 x2^2 - 643 v x1^2 - 2 v x3`.
pub fn excomplexe() -> PolySystem {
    let d = 4;
    let (x1, x2, x3) = (x(d, 1), x(d, 2), x(d, 3));
    let drift = x1
        .pow(2)
        .add(&x3.pow(2).scale(&int(2)))
        .add(&x1.mul(&x3).scale(&ratio(1, 2)))
        .sub(&x2.pow(2).scale(&int(1028)));
    let f0 = field(d, vec![(2, x1.clone()), (4, drift)]);
    let f2 = field(d, vec![(3, one(d)), (4, x1.pow(2).scale(&int(-643)).sub(&x3.scale(&int(2))))]);
    build("excomplexe", f0, field(d, vec![(1, one(d))]), f2)
}

/// `x1' = u, x2' = v, x3' = x1 v, x4' = x3, x5' = x1^2/2 + x2^2/2 + x4`.
pub fn exf1f2() -> PolySystem {
    let d = 5;
    let half = ratio(1, 2);
    let f0 = field(d, vec![(4, x(d, 3)), (5, x(d, 1).pow(2).scale(&half).add(&x(d, 2).pow(2).scale(&half)).add(&x(d, 4)))]);
    let f2 = field(d, vec![(2, one(d)), (3, x(d, 1))]);
    build("exf1f2", f0, field(d, vec![(1, one(d))]), f2)
}

/// `x1' = u, x2' = v, x3' = x1^4 + x2^4`.
pub fn exquartic() -> PolySystem {
    let d = 3;
    let f0 = field(d, vec![(3, x(d, 1).pow(4).add(&x(d, 2).pow(4)))]);
    build("exquartic", f0, field(d, vec![(1, one(d))]), field(d, vec![(2, one(d))]))
}

/// `x1' = u, x2' = x1, x3' = v, x4' = x2^2 + x3^2`.
pub fn exassym() -> PolySystem {
    let d = 4;
    let f0 = field(d, vec![(2, x(d, 1)), (4, x(d, 2).pow(2).add(&x(d, 3).pow(2)))]);
    build("exassym", f0, field(d, vec![(1, one(d))]), field(d, vec![(3, one(d))]))
}

/// The full corpus with the parameters used in the worked examples.
pub fn all() -> Vec<PolySystem> {
    vec![jouet(&int(1)), integrators(2, 1, &int(1)), excomplexe(), exf1f2(), exquartic(), exassym()]
}
