//! End-to-end acceptance criteria. Each criterion runs on its own thread and
//! reports one line; the binary exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stlc_core::corpus;
use stlc_core::freelie::{
    c, expand_coefficients, m, w, BasisConfig, Bracket, CoeffKind, Control, Family, HallBasis, LieElement, ObstructionParams,
};
use stlc_core::obstruction::{bc_classify, quadratic_form_pd, Analyzer, BcInput, Outcome};
use stlc_core::rational::{int, pow, ratio, to_f64, Q};
use stlc_core::signals::{l2_squared, rescale, xi, xi_closed_form, xi_ipp, ControlPair, PiecewisePoly, UPoly, XiSession};
use stlc_core::simulate::{exact_state_oracle, gn_probe, integrate, Tolerance, GN_SPREAD_LIMIT};
use stlc_core::vectorfields::{apply_form, BracketTable, RationalSubspace};

type CriterionResult = Result<String, String>;
type Criterion = (&'static str, fn() -> CriterionResult);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn unit(d: usize, i: usize, c: Q) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[i - 1] = c;
    v
}

fn table(system: &stlc_core::vectorfields::PolySystem, len: usize) -> BracketTable {
    BracketTable::new(system, std::sync::Arc::new(HallBasis::build(len).unwrap())).unwrap()
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1i64, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of Lyndon words of length `n` over three letters.
fn witt(n: usize) -> usize {
    let total: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(n / d) * 3i64.pow(d as u32)).sum();
    (total / n as i64) as usize
}

fn criterion_1() -> CriterionResult {
    let dims = HallBasis::build(6).unwrap().layer_dims();
    let expected: Vec<usize> = (1..=6).map(witt).collect();
    ensure!(expected == [3, 3, 8, 18, 48, 116], "Witt oracle gives {expected:?}");
    ensure!(dims == expected, "layers {dims:?}");
    let start = Instant::now();
    let basis = HallBasis::build(8).unwrap();
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 5.0, "cap 8 build took {secs:.2} s");
    Ok(format!("layers {dims:?}; {} members at cap 8 in {secs:.3} s", basis.len()))
}

fn criterion_2() -> CriterionResult {
    for alpha in [int(0), int(1), ratio(-3, 2), int(3)] {
        let t = table(&corpus::jouet(&alpha), 4);
        let e3 = |c: Q| unit(3, 3, c);
        ensure!(t.eval_at_zero(&w(Control::U, 1, 0)).unwrap() == e3(int(2)), "W1_1 at alpha = {alpha}");
        ensure!(t.eval_at_zero(&w(Control::V, 1, 0)).unwrap() == e3(int(2)), "W2_1 at alpha = {alpha}");
        ensure!(t.eval_at_zero(&c(1, 0)).unwrap() == e3(alpha.clone()), "C_1 at alpha = {alpha}");
        for mm in 1..=2 {
            let (span, _) = t.obstruction_span(&ObstructionParams::Symmetric { k: 1, m: mm }, 4).unwrap();
            let plane = RationalSubspace::span(3, &[unit(3, 1, int(1)), unit(3, 2, int(1))]).unwrap();
            ensure!(span.includes(&plane) && plane.includes(&span), "span at alpha = {alpha}, m = {mm} has rank {}", span.rank());
        }
    }
    Ok("W1_1 = W2_1 = 2 e3, C_1 = alpha e3, span = <e1, e2>".into())
}

fn criterion_3() -> CriterionResult {
    let t = table(&corpus::excomplexe(), 7);
    let e4 = |c: Q| unit(4, 4, c);
    ensure!(t.eval_at_zero(&w(Control::U, 1, 0)).unwrap() == e4(int(2)), "W1_1");
    ensure!(t.eval_at_zero(&w(Control::V, 1, 0)).unwrap() == e4(int(4)), "W2_1");
    ensure!(t.eval_at_zero(&c(1, 0)).unwrap() == e4(ratio(1, 2)), "C_1");
    for l in 0..=5 {
        ensure!(t.eval_at_zero(&c(0, l)).unwrap().iter().all(Zero::is_zero), "C_0,{l}");
    }
    Ok("W1_1 = 2 e4, W2_1 = 4 e4, C_1 = e4/2, C_0,l = 0 for l <= 5".into())
}

fn criterion_4() -> CriterionResult {
    let t = table(&corpus::jouet(&int(0)), 4);
    let plane = RationalSubspace::span(3, &[unit(3, 1, int(1)), unit(3, 2, int(1))]).unwrap();
    let e1 = t.eval_at_zero(&w(Control::U, 1, 0)).unwrap();
    let e2 = t.eval_at_zero(&w(Control::V, 1, 0)).unwrap();
    let classify = |alpha: &Q| {
        let e3 = table(&corpus::jouet(alpha), 4).eval_at_zero(&c(1, 0)).unwrap();
        bc_classify(&BcInput { e1: e1.clone(), e2: e2.clone(), e3, span: plane.clone() }).unwrap()
    };
    let inside = [int(0), int(1), int(-1), ratio(3, 2), ratio(-3, 2), ratio(199, 100), ratio(-199, 100)];
    for alpha in &inside {
        ensure!(classify(alpha).holds, "fails at alpha = {alpha}");
    }
    for alpha in [int(2), int(-2), int(3), int(-3)] {
        let out = classify(&alpha);
        ensure!(!out.holds, "holds at alpha = {alpha}");
    }
    Ok(format!("holds at {} values with |alpha| < 2, fails at +-2, +-3", inside.len()))
}

fn criterion_5() -> CriterionResult {
    let toy = Analyzer::new(&corpus::jouet(&int(1)), 8).unwrap();
    ensure!(toy.verdict_symmetric(1, 1).unwrap().outcome == Outcome::Obstruction, "toy");
    let quartic = Analyzer::new(&corpus::exquartic(), 8).unwrap();
    let assym = Analyzer::new(&corpus::exassym(), 8).unwrap();
    for k in 1..=3 {
        for mm in 1..=2 {
            ensure!(quartic.verdict_symmetric(k, mm).unwrap().outcome == Outcome::Inconclusive, "exquartic k = {k}, m = {mm}");
            ensure!(assym.verdict_symmetric(k, mm).unwrap().outcome == Outcome::Inconclusive, "exassym k = {k}, m = {mm}");
        }
    }
    ensure!(assym.verdict_asymmetric(2, 1, 1, 1).unwrap().outcome == Outcome::Obstruction, "exassym asymmetric");
    let f1f2 = Analyzer::new(&corpus::exf1f2(), 8).unwrap();
    for k in 1..=2 {
        for mm in 1..=2 {
            ensure!(f1f2.verdict_symmetric(k, mm).unwrap().outcome == Outcome::Inconclusive, "exf1f2 k = {k}, m = {mm}");
        }
    }
    let chains = Analyzer::new(&corpus::integrators(2, 1, &int(1)), 8).unwrap();
    ensure!(chains.verdict_asymmetric(2, 1, 1, 1).unwrap().outcome == Outcome::Obstruction, "integrators");
    Ok("toy, exquartic, exassym (both modes), exf1f2 and integrators as stated".into())
}

fn criterion_6() -> CriterionResult {
    let basis = HallBasis::with_config(BasisConfig::new(14).with_max_n(2).with_cap(14)).unwrap();
    let sum = |coeffs: &[Q], p: usize, nu: usize| {
        let mut out = LieElement::zero();
        for (r, x) in coeffs.iter().enumerate() {
            out.add_scaled(&basis.normalize(&c(2 * p + r, nu - r)).unwrap(), x);
        }
        out
    };
    for nu in 0..=10 {
        let beta = expand_coefficients(CoeffKind::Beta, nu);
        let gamma = expand_coefficients(CoeffKind::Gamma, nu);
        let sign = if (1 + nu.div_ceil(2)) % 2 == 0 { int(1) } else { int(-1) };
        ensure!(gamma[nu] == sign, "gamma_{nu},{nu} = {}", gamma[nu]);
        for p in 0..=1 {
            let uv = basis.normalize(&Bracket::pair(m(Control::U, p), m(Control::V, p).with_drift(nu))).unwrap();
            let vu = basis.normalize(&Bracket::pair(m(Control::V, p), m(Control::U, p).with_drift(nu))).unwrap();
            ensure!(uv == sum(&beta, p, nu), "beta, p = {p}, nu = {nu}");
            ensure!(vu == sum(&gamma, p, nu), "gamma, p = {p}, nu = {nu}");
        }
        if nu == 0 {
            continue;
        }
        for p in 0..=1 {
            let b = basis.normalize(&m(Control::U, p)).unwrap();
            let lhs = basis.bracket(&b, &basis.with_drift(&b, nu).unwrap()).unwrap();
            let mut rhs = LieElement::zero();
            for (r, a) in expand_coefficients(CoeffKind::Alpha, nu).iter().enumerate() {
                let inner = basis.bracket(&basis.with_drift(&b, r).unwrap(), &basis.with_drift(&b, r + 1).unwrap()).unwrap();
                rhs.add_scaled(&basis.with_drift(&inner, nu - 2 * r - 1).unwrap(), a);
            }
            ensure!(lhs == rhs, "alpha, p = {p}, nu = {nu}");
        }
    }
    Ok("alpha, beta, gamma expansions equal normalize for nu <= 10; gamma_nu,nu signs match".into())
}

fn random_signal(rng: &mut ChaCha8Rng, horizon: &Q) -> PiecewisePoly {
    let n = rng.gen_range(1..=3);
    let mut cuts: Vec<Q> = (1..n).map(|i| horizon * ratio(i, n) + ratio(rng.gen_range(-1..=1), 16 * n) * horizon).collect();
    cuts.insert(0, Q::zero());
    cuts.push(horizon.clone());
    let pieces = (0..n).map(|_| UPoly::new((0..=rng.gen_range(0..=2)).map(|_| ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect())).collect();
    PiecewisePoly::new(cuts, pieces).unwrap()
}

fn families(max: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for control in [Control::U, Control::V] {
        out.extend((0..=max).map(|j| Family::M { control, j }));
        for j in 1..=max {
            out.extend((0..=max - j).map(|l| Family::W { control, j, l }));
        }
    }
    for j in 0..=max {
        out.extend((0..=max - j).map(|l| Family::C { j, l }));
    }
    out
}

fn criterion_7() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let families = families(6);
    let mut checked = 0;
    for _ in 0..50 {
        let horizon = [ratio(1, 2), int(1), ratio(3, 2)][rng.gen_range(0..3)].clone();
        let controls = ControlPair::new(random_signal(&mut rng, &horizon), random_signal(&mut rng, &horizon)).unwrap();
        let mut session = XiSession::new(controls.clone());
        let t = &horizon * ratio(rng.gen_range(1..=8), 8);
        for f in &families {
            ensure!(session.xi(&f.bracket(), &t).unwrap() == xi_closed_form(f, &t, &controls).unwrap(), "{f} at t = {t}");
            checked += 1;
        }
        for j in 0..=7 {
            let expected = xi(&c(j, 1), &t, &controls).unwrap();
            for n in 0..j.div_ceil(2) {
                ensure!(xi_ipp(j, 1, Some(n), &t, &controls).unwrap().total() == expected, "ipp j = {j}, n = {n}");
            }
        }
    }
    Ok(format!("{checked} exact family evaluations over 50 pairs; ipp identity for j <= 7"))
}

fn compensating(phi: &UPoly, psi: &UPoly, t: &Q) -> ControlPair {
    let u = PiecewisePoly::polynomial(t, rescale(&phi.derivative(), t));
    let v = PiecewisePoly::polynomial(t, rescale(&psi.derivative(), t));
    ControlPair::new(u, v).unwrap()
}

fn criterion_8() -> CriterionResult {
    let start = Instant::now();
    let tol = Tolerance::new(1e-9).unwrap();
    let p = |c: &[i64]| UPoly::new(c.iter().map(|x| int(*x)).collect());
    let psis = [p(&[0, 1, -1]), p(&[0, 0, 1]), p(&[0, 1, -3, 2])];
    let t = ratio(1, 2);
    let mut worst: f64 = 0.0;
    for alpha in [int(0), int(1), int(3)] {
        let system = corpus::jouet(&alpha);
        for psi in &psis {
            let phi = psi.scale(&(-&alpha / int(2)));
            let controls = compensating(&phi, psi, &t);
            // The time-scaled family gives x3(t) = -((alpha^2 - 4)/4) t^3 int_0^1 psi^2.
            let expected = to_f64(&(-(&alpha * &alpha - int(4)) / int(4) * pow(&t, 3) * psi.mul(psi).integrate(&int(0), &int(1))));
            let x = integrate(&system, &controls, &t, tol).map_err(|e| e.to_string())?.final_state()[2];
            let err = (x - expected).abs() / expected.abs();
            worst = worst.max(err);
            ensure!(err < 1e-6, "alpha = {alpha}, psi = {psi}: {x} vs {expected}");
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 10.0, "took {secs:.2} s");
    Ok(format!("worst relative error {worst:.2e} in {secs:.2} s"))
}

/// `n` periods on `[0, horizon]`; with `r` the local time in `[0, 1]`,
/// `u = a (1 - 6r + 6r^2)` and `v = a (1 - 2r)`. Both primitives return
/// to zero at the end of each period.
fn periodic_family(horizon: &Q, a: &Q, n: usize) -> ControlPair {
    let h = horizon / int(n as i64);
    let u_local = UPoly::new(vec![a.clone(), a * int(-6), a * int(6)]);
    let v_local = UPoly::new(vec![a.clone(), a * int(-2)]);
    let cuts: Vec<Q> = (0..=n).map(|i| &h * int(i as i64)).collect();
    let shifted = |p: &UPoly, i: usize| {
        // p((s - i h) / h) as a polynomial in s.
        let local = rescale(p, &h);
        let shift = -(&h * int(i as i64));
        let mut out = UPoly::zero();
        let base = UPoly::new(vec![shift, Q::one()]);
        for (k, coeff) in local.coeffs().iter().enumerate() {
            out = out.add(&base.pow(k).scale(coeff));
        }
        out
    };
    let u = PiecewisePoly::new(cuts.clone(), (0..n).map(|i| shifted(&u_local, i)).collect()).unwrap();
    let v = PiecewisePoly::new(cuts, (0..n).map(|i| shifted(&v_local, i)).collect()).unwrap();
    ControlPair::new(u, v).unwrap()
}

fn criterion_9() -> CriterionResult {
    let system = corpus::excomplexe();
    let tol = Tolerance::new(1e-10).unwrap();
    let mut worst = f64::INFINITY;
    for horizon in [ratio(1, 8), ratio(1, 16), ratio(1, 32)] {
        for a in [ratio(1, 8), ratio(1, 16)] {
            let controls = periodic_family(&horizon, &a, 4);
            let x = integrate(&system, &controls, &horizon, tol).map_err(|e| e.to_string())?;
            let x = x.final_state();
            let energy = to_f64(&(l2_squared(&controls.u().primitive()) + l2_squared(&controls.v().primitive())));
            let measured = (x[3] + x[2] * x[2]) / energy;
            let exact = exact_state_oracle(&system, &controls, &horizon).map_err(|e| e.to_string())?;
            let exact_ratio = (to_f64(&exact[3]) + to_f64(&exact[2]).powi(2)) / energy;
            ensure!((measured - exact_ratio).abs() < 1e-6 * exact_ratio.abs(), "integrator {measured} vs exact {exact_ratio}");
            worst = worst.min(measured);
            ensure!(measured >= 0.7, "T = {horizon}, a = {a}: ratio {measured}");
        }
    }
    Ok(format!("smallest ratio {worst:.4} over 6 sweep points"))
}

fn criterion_10() -> CriterionResult {
    for cap in [4, 6] {
        let toy = Analyzer::new(&corpus::jouet(&int(1)), cap).unwrap();
        for theta in [int(0), ratio(1, 2), int(1)] {
            let out = toy.sussmann(&theta, &w(Control::U, 1, 0)).unwrap();
            ensure!(!out.in_span, "S({theta}) holds at length cap {cap}");
        }
    }
    Ok("S(theta) fails for W1_1 at theta in {0, 1/2, 1}, caps 4 and 6".into())
}

fn criterion_11() -> CriterionResult {
    let sigma = |c: &[i64]| UPoly::new(c.iter().map(|x| int(*x)).collect());
    let shapes = [("ramp", sigma(&[0, 1])), ("ramp plus square", sigma(&[0, 1, 1])), ("square", sigma(&[0, 0, 1]))];
    let ts: Vec<Q> = [ratio(1, 4), ratio(1, 2), int(1), int(2), int(4)].into();
    let mut worst: f64 = 0.0;
    for (name, g) in &shapes {
        let family = |t: &Q| PiecewisePoly::polynomial(t, rescale(g, t));
        for (k, mm, p) in [(1, 1, 1.0), (1, 1, 2.0), (2, 1, 2.0)] {
            let r = gn_probe(&family, &ts, k, mm, p).map_err(|e| e.to_string())?;
            ensure!(!r.growth, "{name} at ({k}, {mm}, {p}): monotone growth {:?}", r.rows);
            ensure!(r.spread < GN_SPREAD_LIMIT, "{name} at ({k}, {mm}, {p}): spread {:.2}", r.spread);
            worst = worst.max(r.spread);
        }
    }
    Ok(format!("largest max/min ratio {worst:.2} over 9 sweeps"))
}

fn random_instance(rng: &mut ChaCha8Rng) -> (BcInput, Vec<Vec<Q>>) {
    let d = rng.gen_range(1..=5);
    let vector = |rng: &mut ChaCha8Rng| -> Vec<Q> { (0..d).map(|_| ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect() };
    let e1 = vector(rng);
    let mut e2 = vector(rng);
    let mut e3 = vector(rng);
    match rng.gen_range(0..4) {
        0 => e2 = e1.iter().map(|x| x * ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2))).collect(),
        1 => e3 = e1.iter().zip(&e2).map(|(a, b)| a * ratio(rng.gen_range(-2..=2), 2) + b * ratio(rng.gen_range(-2..=2), 2)).collect(),
        _ => {}
    }
    let spanning: Vec<Vec<Q>> = (0..rng.gen_range(0..d.min(3))).map(|_| vector(rng)).collect();
    let span = RationalSubspace::span(d, &spanning).unwrap();
    (BcInput { e1, e2, e3, span }, spanning)
}

/// Forms with integer entries in `[-2, 2]`.
fn grid_finds_witness(input: &BcInput, spanning: &[Vec<Q>]) -> bool {
    let d = input.e1.len();
    let mut p = vec![-2i64; d];
    loop {
        let form: Vec<Q> = p.iter().map(|x| int(*x)).collect();
        if spanning.iter().all(|v| apply_form(&form, v).is_zero()) {
            let (a, b, c3) = (apply_form(&form, &input.e1), apply_form(&form, &input.e2), apply_form(&form, &input.e3));
            if a.is_positive() && b.is_positive() && &c3 * &c3 < &a * &b {
                return true;
            }
        }
        let mut i = 0;
        while i < d && p[i] == 2 {
            p[i] = -2;
            i += 1;
        }
        if i == d {
            return false;
        }
        p[i] += 1;
    }
}

fn criterion_12() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut grid_hits, mut held) = (0, 0);
    for n in 0..1000 {
        let (input, spanning) = random_instance(&mut rng);
        let out = bc_classify(&input).map_err(|e| e.to_string())?;
        if let Some(wf) = &out.witness {
            held += 1;
            let (a, b, c3) = (apply_form(wf, &input.e1), apply_form(wf, &input.e2), apply_form(wf, &input.e3));
            ensure!(a.is_positive() && b.is_positive() && &c3 * &c3 < &a * &b, "instance {n}: witness inequalities");
            ensure!(quadratic_form_pd(&a, &b, &c3), "instance {n}: form not definite");
            ensure!(input.span.rows().iter().all(|v| apply_form(wf, v).is_zero()), "instance {n}: witness misses the span");
        }
        ensure!(out.holds == out.witness.is_some(), "instance {n}: holds without witness");
        if grid_finds_witness(&input, &spanning) {
            grid_hits += 1;
            ensure!(out.holds, "instance {n}: grid found a witness, classification did not");
        }
    }
    Ok(format!("{held} witnesses verified; all {grid_hits} grid hits classified as holding"))
}

fn main() -> std::process::ExitCode {
    let criteria: [Criterion; 12] = [
        ("Hall layer dimensions and build time", criterion_1),
        ("toy bracket values at the origin", criterion_2),
        ("excomplexe bracket values at the origin", criterion_3),
        ("BC boundary |alpha| < 2 on the toy", criterion_4),
        ("verdict table over the corpus", criterion_5),
        ("expansion coefficient recursions", criterion_6),
        ("xi recursion against closed forms", criterion_7),
        ("simulated drift of the compensating family", criterion_8),
        ("excomplexe drift inequality sweep", criterion_9),
        ("S(theta) incompatibility on the toy", criterion_10),
        ("interpolation ratio stays bounded", criterion_11),
        ("BC classification exhaustiveness", criterion_12),
    ];
    let results: Vec<CriterionResult> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| s.spawn(move || catch_unwind(AssertUnwindSafe(f)))).collect();
        handles
            .into_iter()
            .map(|h| match h.join().expect("criterion thread") {
                Ok(r) => r,
                Err(p) => Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into())),
            })
            .collect()
    });
    let mut failed = Vec::new();
    for (i, ((name, _), r)) in criteria.iter().zip(&results).enumerate() {
        match r {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
