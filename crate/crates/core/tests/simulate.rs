use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stlc_core::corpus;
use stlc_core::obstruction::{Analyzer, Outcome};
use stlc_core::rational::{int, ratio, to_f64, Q};
use stlc_core::signals::{l2_squared, rescale, ControlPair, PiecewisePoly, UPoly};
use stlc_core::simulate::{
    drift_probe, exact_state_oracle, gn_probe, gn_ratio, integrate, magnus_truncation_probe, DriftOrders, DriftSweep, DriftVerdict, SimError,
    Tolerance,
};
use stlc_core::vectorfields::{Poly, PolySystem, PolyVectorField};

fn poly(c: &[Q]) -> UPoly {
    UPoly::new(c.to_vec())
}

/// `u(s) = phi'(s/t)`, `v(s) = psi'(s/t)` on `[0, t]`, so that
/// `u_1(s) = t phi(s/t)` when `phi(0) = 0`.
fn compensating(phi: &UPoly, psi: &UPoly, t: &Q) -> ControlPair {
    let u = PiecewisePoly::polynomial(t, rescale(&phi.derivative(), t));
    let v = PiecewisePoly::polynomial(t, rescale(&psi.derivative(), t));
    ControlPair::new(u, v).unwrap()
}

fn random_signal(rng: &mut ChaCha8Rng, horizon: &Q) -> PiecewisePoly {
    let n = rng.gen_range(1..=3);
    let mut cuts: Vec<Q> = (1..n).map(|i| horizon * ratio(i, n)).collect();
    cuts.insert(0, Q::zero());
    cuts.push(horizon.clone());
    let pieces = (0..n).map(|_| poly(&(0..rng.gen_range(1..=3)).map(|_| ratio(rng.gen_range(-3..=3), 2)).collect::<Vec<_>>())).collect();
    PiecewisePoly::new(cuts, pieces).unwrap()
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn equilibrium_and_nonnegative_drift() {
    let tol = Tolerance::new(1e-9).unwrap();
    for system in corpus::all() {
        let traj = integrate(&system, &ControlPair::zero(&int(1)), &int(1), tol).unwrap();
        assert!(traj.final_state().iter().all(|x| *x == 0.0), "{}", system.name());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for alpha in [int(1), int(3), int(-5)] {
        let system = corpus::jouet(&alpha);
        let u = random_signal(&mut rng, &int(1));
        let controls = ControlPair::new(u, PiecewisePoly::zero(&int(1))).unwrap();
        let x = integrate(&system, &controls, &int(1), tol).unwrap();
        assert!(x.final_state()[2] >= 0.0);
    }
}

#[test]
fn compensating_family_formula() {
    let tol = Tolerance::new(1e-9).unwrap();
    let psis = [poly(&[int(0), int(1), int(-1)]), poly(&[int(0), int(0), int(1)]), poly(&[int(0), int(1), int(-3), int(2)])];
    let t = int(1);
    for alpha in [int(0), int(1), int(3)] {
        let system = corpus::jouet(&alpha);
        for psi in &psis {
            let phi = psi.scale(&(-&alpha / int(2)));
            let controls = compensating(&phi, psi, &t);
            let expected = -(&alpha * &alpha - int(4)) / int(4) * &t * &t * &t * psi.mul(psi).integrate(&int(0), &int(1));
            let x = integrate(&system, &controls, &t, tol).unwrap();
            assert!(rel_err(x.final_state()[2], to_f64(&expected)) < 1e-6, "alpha = {alpha}, psi = {psi}");
            assert_eq!(exact_state_oracle(&system, &controls, &t).unwrap()[2], expected);
        }
    }
}

#[test]
fn oracle_values() {
    let ones = ControlPair::constant(&int(1), int(1), int(1));
    assert_eq!(exact_state_oracle(&corpus::jouet(&int(0)), &ones, &int(1)).unwrap(), vec![int(1), int(1), ratio(2, 3)]);
    assert_eq!(exact_state_oracle(&corpus::exf1f2(), &ControlPair::zero(&int(1)), &int(1)).unwrap(), vec![Q::zero(); 5]);
    // z = 9/4, eps = 1/2: x3(4 eps) = z eps^2.
    let eps = ratio(1, 2);
    let r = ratio(3, 2);
    let piece = |i: i64, c: Q| (&eps * int(i), &eps * int(i + 1), UPoly::constant(c));
    let u = PiecewisePoly::from_pieces(vec![piece(0, r.clone()), piece(1, Q::zero()), piece(2, -&r), piece(3, Q::zero())]).unwrap();
    let v = PiecewisePoly::from_pieces(vec![piece(0, Q::zero()), piece(1, r.clone()), piece(2, Q::zero()), piece(3, -&r)]).unwrap();
    let controls = ControlPair::new(u, v).unwrap();
    let x = exact_state_oracle(&corpus::exf1f2(), &controls, &int(2)).unwrap();
    assert_eq!((&x[0], &x[1], &x[2]), (&Q::zero(), &Q::zero(), &(ratio(9, 4) * &eps * &eps)));
    let num = integrate(&corpus::exf1f2(), &controls, &int(2), Tolerance::new(1e-10).unwrap()).unwrap();
    for (a, b) in num.final_state().iter().zip(&x) {
        assert!((a - to_f64(b)).abs() < 1e-8);
    }

    assert!(matches!(exact_state_oracle(&corpus::integrators(3, 1, &int(1)), &ones, &int(1)), Err(SimError::Unregistered(_))));
    let renamed = PolySystem::new("other", corpus::exassym().field(0).clone(), corpus::exassym().field(1).clone(), corpus::exassym().field(2).clone()).unwrap();
    assert!(matches!(exact_state_oracle(&renamed, &ones, &int(1)), Err(SimError::Unregistered(_))));
}

#[test]
fn integrator_matches_oracle_on_the_corpus() {
    let rel = 1e-9;
    let tol = Tolerance::new(rel).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut systems = corpus::all();
    systems.extend([corpus::integrators(1, 1, &int(2)), corpus::integrators(3, 2, &ratio(-1, 2))]);
    for system in systems {
        for _ in 0..20 {
            let t = ratio(rng.gen_range(1..=4), 4);
            let controls = ControlPair::new(random_signal(&mut rng, &t), random_signal(&mut rng, &t)).unwrap();
            let exact = exact_state_oracle(&system, &controls, &t).unwrap();
            let num = integrate(&system, &controls, &t, tol).unwrap();
            for (a, b) in num.final_state().iter().zip(&exact) {
                let b = to_f64(b);
                assert!((a - b).abs() <= 100.0 * rel * (1.0 + b.abs()), "{}: {a} vs {b}", system.name());
            }
        }
    }
}

#[test]
fn tightening_the_tolerance_helps() {
    let system = corpus::jouet(&int(0));
    let t = int(2);
    let u = PiecewisePoly::from_pieces(vec![(int(0), int(1), poly(&[int(1), int(-3), int(2)])), (int(1), int(2), poly(&[int(4), int(-1)]))]).unwrap();
    let controls = ControlPair::new(u, PiecewisePoly::polynomial(&t, poly(&[int(-1), int(0), int(1)]))).unwrap();
    let exact: Vec<f64> = exact_state_oracle(&system, &controls, &t).unwrap().iter().map(to_f64).collect();
    let mut previous = f64::INFINITY;
    for rel in [1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9] {
        let x = integrate(&system, &controls, &t, Tolerance::new(rel).unwrap()).unwrap();
        let size = exact.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let residual = x.final_state().iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(residual <= 10.0 * rel * (1.0 + size), "rel = {rel}: {residual}");
        assert!(residual <= previous, "rel = {rel}: {residual} > {previous}");
        previous = residual;
    }
    assert!(matches!(Tolerance::new(1e-2), Err(SimError::Tolerance(_))));
}

#[test]
fn blow_up_is_reported() {
    let f0 = PolyVectorField::new(vec![Poly::var(1, 0).pow(2)]);
    let f1 = PolyVectorField::new(vec![Poly::constant(1, Q::one())]);
    let system = PolySystem::new("riccati", f0, f1, PolyVectorField::zero(1)).unwrap();
    let controls = ControlPair::constant(&int(2), int(1), int(0));
    let out = integrate(&system, &controls, &int(2), Tolerance::new(1e-8).unwrap());
    assert!(matches!(out, Err(SimError::StepUnderflow { .. } | SimError::TooManySteps { .. })), "{out:?}");
}

fn sweep() -> DriftSweep {
    DriftSweep { times: vec![ratio(1, 4), ratio(1, 8), ratio(1, 16)], amplitudes: vec![ratio(1, 4), ratio(1, 16)] }
}

#[test]
fn drift_probe_on_the_toy() {
    let tol = Tolerance::new(1e-10).unwrap();
    let orders = DriftOrders { k: 1, k_prime: 1, m: 1 };
    let e3 = vec![int(0), int(0), int(1)];
    let psi = poly(&[int(0), int(1), int(-1)]);
    let generic = |t: &Q, a: &Q| compensating(&poly(&[int(0), int(1), int(-2)]).scale(a), &psi.scale(a), t);
    let report = drift_probe(&corpus::jouet(&int(0)), &e3, orders, "generic", &generic, &sweep(), 1.0, tol).unwrap();
    for row in &report.rows {
        assert!((row.projection / row.delta - 1.0).abs() < 1e-6);
    }
    assert_eq!(report.verdict, DriftVerdict::Consistent);

    let alpha = int(3);
    let family = |t: &Q, a: &Q| compensating(&psi.scale(&(-&alpha / int(2) * a)), &psi.scale(a), t);
    let report = drift_probe(&corpus::jouet(&alpha), &e3, orders, "compensating", &family, &sweep(), 1.0, tol).unwrap();
    assert_eq!(report.verdict, DriftVerdict::Violated);
    assert!(report.min_ratio < -0.3);
    assert!((report.beta - 4.0 / 3.0).abs() < 1e-15);
    assert!(matches!(
        drift_probe(&corpus::jouet(&alpha), &e3, orders, "x", &family, &DriftSweep { times: vec![], amplitudes: vec![int(1)] }, 1.0, tol),
        Err(SimError::EmptySweep)
    ));
}

#[test]
fn drift_probe_on_corpus_obstructions() {
    let tol = Tolerance::new(1e-10).unwrap();
    let psi = poly(&[int(0), int(1), int(-1)]);
    let phi = poly(&[int(0), int(2), int(-1), int(-1)]);
    let family = |t: &Q, a: &Q| compensating(&phi.scale(a), &psi.scale(a), t);
    let cases: Vec<(PolySystem, usize, usize, usize)> =
        vec![(corpus::jouet(&int(1)), 1, 1, 1), (corpus::exassym(), 2, 1, 1), (corpus::integrators(2, 1, &int(1)), 2, 1, 1)];
    for (system, k, kp, m) in cases {
        let verdict = Analyzer::new(&system, 8).unwrap().verdict_asymmetric(k, kp, m, m).unwrap();
        assert_eq!(verdict.outcome, Outcome::Obstruction);
        let orders = DriftOrders { k, k_prime: kp, m };
        let report = drift_probe(&system, verdict.witness.as_ref().unwrap(), orders, "generic", &family, &sweep(), 1.0, tol).unwrap();
        assert_eq!(report.verdict, DriftVerdict::Consistent, "{}", system.name());
        assert!(report.fitted_constant > 0.0);
    }
}

#[test]
fn magnus_truncation() {
    let tol = Tolerance::new(1e-11).unwrap();
    let t = int(1);
    let zero = |_: &Q| ControlPair::zero(&int(1));
    let report = magnus_truncation_probe(&corpus::jouet(&int(1)), &zero, &[int(1)], &t, 3, tol).unwrap();
    assert_eq!(report.rows[0].residual, 0.0);

    let shape = |e: &Q| compensating(&poly(&[int(0), int(1), int(-2)]).scale(e), &poly(&[int(0), int(1)]).scale(e), &int(1));
    let scales: Vec<Q> = (1..=4).map(|i| ratio(1, 1 << i)).collect();
    // The full formula has length 3 on the toy: only round-off remains.
    let report = magnus_truncation_probe(&corpus::jouet(&int(1)), &shape, &scales, &t, 3, tol).unwrap();
    assert!(report.rows.iter().all(|r| r.residual < 1e-9));
    // Dropping the quadratic layer leaves an error of second order.
    let report = magnus_truncation_probe(&corpus::jouet(&int(1)), &shape, &scales, &t, 2, tol).unwrap();
    let order = report.decay_order.unwrap();
    assert!((order - 2.0).abs() < 0.05, "{order}");
    // x5' = x1^2/2 + x2^2/2 + x4 is composed exactly.
    let report = magnus_truncation_probe(&corpus::exf1f2(), &shape, &scales, &t, 6, tol).unwrap();
    assert!(report.rows.iter().all(|r| r.residual < 1e-9));
}

#[test]
fn interpolation_ratio() {
    assert!(matches!(gn_ratio(&PiecewisePoly::zero(&int(1)), 1, 1, 1.0), Err(SimError::ZeroDenominator(_))));
    // u = 1, k = m = 1, p = 2: L1^4 / (t * t * t^3 / 3) = 3 / t.
    for t in [int(1), ratio(1, 2), ratio(1, 8)] {
        let r = gn_ratio(&PiecewisePoly::constant(&t, int(1)), 1, 1, 2.0).unwrap();
        assert!(rel_err(r, 3.0 / to_f64(&t)) < 1e-12);
    }
    let constant = |t: &Q| PiecewisePoly::constant(t, int(1));
    let ts: Vec<Q> = (0..5).map(|i| ratio(1, 1 << i)).collect();
    let report = gn_probe(&constant, &ts, 1, 1, 2.0).unwrap();
    assert!(report.growth && !report.bounded);

    // u(s) = s (t - s), k = m = p = 1.
    let bump = |t: &Q| PiecewisePoly::polynomial(t, poly(&[int(0), t.clone(), int(-1)]));
    let report = gn_probe(&bump, &ts[..4], 1, 1, 1.0).unwrap();
    assert!(report.bounded, "{report:?}");
    assert!(report.rows.iter().all(|r| r.ratio.is_finite() && r.ratio > 0.0));
    let u = bump(&int(1));
    // int_0^1 (s^2/2 - s^3/3)^2 = 1/20 - 1/18 + 1/63.
    assert_eq!(l2_squared(&u.primitive()), ratio(13, 1260));
}
