use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;
use stlc_core::corpus;
use stlc_core::freelie::{c, m, w, Bracket, Control, HallBasis, ObstructionParams};
use stlc_core::rational::{int, ratio, Q};
use stlc_core::vectorfields::{
    evaluate_bracket, nilpotency_horizon, vf_bracket, BracketTable, Poly, PolySystem, PolyVectorField, RationalSubspace,
};

fn unit(d: usize, i: usize, c: Q) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[i - 1] = c;
    v
}

fn table(system: &PolySystem, len: usize) -> BracketTable {
    BracketTable::new(system, Arc::new(HallBasis::build(len).unwrap())).unwrap()
}

#[test]
fn toy_values_and_span() {
    for alpha in [int(0), int(1), ratio(-3, 2), int(3)] {
        let t = table(&corpus::jouet(&alpha), 6);
        assert_eq!(t.eval_at_zero(&w(Control::U, 1, 0)).unwrap(), unit(3, 3, int(2)));
        assert_eq!(t.eval_at_zero(&w(Control::V, 1, 0)).unwrap(), unit(3, 3, int(2)));
        assert_eq!(t.eval_at_zero(&c(1, 0)).unwrap(), unit(3, 3, alpha.clone()));
        let (span, truncated) = t.obstruction_span(&ObstructionParams::symmetric(1, 1).unwrap(), 6).unwrap();
        let expected = RationalSubspace::span(3, &[unit(3, 1, int(1)), unit(3, 2, int(1))]).unwrap();
        assert_eq!(span, expected);
        assert!(!truncated);
        assert_eq!(t.horizon(), Some(4));
    }
}

#[test]
fn excomplexe_values() {
    let t = table(&corpus::excomplexe(), 8);
    assert_eq!(t.eval_at_zero(&w(Control::U, 1, 0)).unwrap(), unit(4, 4, int(2)));
    assert_eq!(t.eval_at_zero(&w(Control::V, 1, 0)).unwrap(), unit(4, 4, int(4)));
    assert_eq!(t.eval_at_zero(&c(1, 0)).unwrap(), unit(4, 4, ratio(1, 2)));
    for l in 0..=5 {
        assert!(t.eval_at_zero(&c(0, l)).unwrap().iter().all(Zero::is_zero), "C_0,{l}");
    }
    let first_three = RationalSubspace::span(4, &[unit(4, 1, int(1)), unit(4, 2, int(1)), unit(4, 3, int(1))]).unwrap();
    for m in 2..=4 {
        let (span, truncated) = t.obstruction_span(&ObstructionParams::symmetric(1, m).unwrap(), 8).unwrap();
        assert_eq!(span, first_three, "m = {m}");
        assert!(!truncated);
    }
    // At m = 1 brackets with three control occurrences compensate too, and
    // the v x1^2 term makes (X1,(X1,X2)) point along e4.
    let b = Bracket::parse("(X1,(X1,X2))").unwrap();
    assert_eq!(t.eval_at_zero(&b).unwrap(), unit(4, 4, int(-1286)));
    let (span, _) = t.obstruction_span(&ObstructionParams::symmetric(1, 1).unwrap(), 8).unwrap();
    assert_eq!(span.rank(), 4);
}

#[test]
fn control_fields_and_commutator() {
    let t = table(&corpus::exf1f2(), 4);
    assert_eq!(t.eval_at_zero(&c(0, 0)).unwrap(), unit(5, 3, int(1)));
    let t = table(&corpus::jouet(&int(1)), 2);
    assert_eq!(t.eval_at_zero(&Bracket::x1()).unwrap(), unit(3, 1, int(1)));
    assert_eq!(t.eval_at_zero(&Bracket::x2()).unwrap(), unit(3, 2, int(1)));
    assert!(t.eval_at_zero(&c(0, 0)).unwrap().iter().all(Zero::is_zero));
}

#[test]
fn bracket_by_hand() {
    let d = 3;
    let f = PolyVectorField::unit(d, 0);
    let mut g = vec![Poly::zero(d); d];
    g[2] = Poly::var(d, 0).pow(2);
    let g = PolyVectorField::new(g);
    let mut expected = vec![Poly::zero(d); d];
    expected[2] = Poly::var(d, 0).scale(&int(2));
    assert_eq!(vf_bracket(&f, &g).unwrap(), PolyVectorField::new(expected));
    assert!(vf_bracket(&g, &g).unwrap().is_zero());
}

#[test]
fn horizons() {
    let d = 3;
    let zero = PolyVectorField::zero(d);
    let trivial = PolySystem::new("trivial", zero, PolyVectorField::unit(d, 0), PolyVectorField::unit(d, 1)).unwrap();
    assert_eq!(nilpotency_horizon(&trivial, 6).unwrap(), Some(2));
    // Linear drift with a nilpotent shift of index q = 3: x2' = x1, x3' = x2.
    let mut comps = vec![Poly::zero(d); d];
    comps[1] = Poly::var(d, 0);
    comps[2] = Poly::var(d, 1);
    let shift = PolySystem::new("shift", PolyVectorField::new(comps), PolyVectorField::unit(d, 0), PolyVectorField::unit(d, 1)).unwrap();
    let h = nilpotency_horizon(&shift, 7).unwrap().expect("nilpotent");
    assert!(h <= 5, "horizon {h}");
    assert_eq!(nilpotency_horizon(&corpus::jouet(&int(1)), 6).unwrap(), Some(4));
}

#[test]
fn evaluation_is_a_homomorphism() {
    let basis = Arc::new(HallBasis::build(6).unwrap());
    let leaves = [Bracket::x0(), Bracket::x1(), Bracket::x2()];
    for system in corpus::all() {
        let t = BracketTable::new(&system, basis.clone()).unwrap();
        // Members are evaluated through their factors; compare with direct recursion.
        for (i, b) in basis.members().iter().enumerate() {
            assert_eq!(&evaluate_bracket(&system, b).unwrap(), t.field(i), "{} {}", system.name(), b);
        }
        // Non-Hall brackets go through rewriting.
        for a in basis.members().iter().filter(|b| b.len() <= 3) {
            for l in &leaves {
                let b = Bracket::pair(a.clone(), l.clone());
                let rewritten = t.evaluate_lie(&basis.normalize(&b).unwrap());
                assert_eq!(rewritten, evaluate_bracket(&system, &b).unwrap(), "{} {}", system.name(), b);
            }
        }
    }
}

#[test]
fn control_directions_are_independent_when_bc_holds() {
    for (system, k) in [(corpus::jouet(&int(1)), 1), (corpus::integrators(2, 2, &int(1)), 2)] {
        let t = table(&system, 2 * k + 1);
        let mut s = RationalSubspace::zero(system.dim());
        for j in 0..k {
            s.insert(&t.eval_at_zero(&m(Control::U, j)).unwrap()).unwrap();
            s.insert(&t.eval_at_zero(&m(Control::V, j)).unwrap()).unwrap();
        }
        assert_eq!(s.rank(), 2 * k);
    }
}

#[test]
fn span_grows_with_the_cap_and_stabilizes() {
    let system = corpus::excomplexe();
    let t = table(&system, 8);
    let params = ObstructionParams::symmetric(2, 1).unwrap();
    let mut prev = RationalSubspace::zero(system.dim());
    let horizon = t.horizon().expect("nilpotent");
    for cap in 1..=8 {
        let (span, truncated) = t.obstruction_span(&params, cap).unwrap();
        assert!(span.includes(&prev));
        assert_eq!(truncated, cap + 1 < horizon);
        if cap >= horizon {
            assert_eq!(span, prev);
        }
        prev = span;
    }
    let (full, _) = t.obstruction_span(&params, horizon).unwrap();
    assert_eq!(prev, full);
}

fn poly_strategy(d: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=1, d), -3i64..=3), 0..4)
        .prop_map(move |terms| Poly::from_terms(d, terms.into_iter().map(|(e, c)| (e, int(c)))))
}

fn field_strategy(d: usize) -> impl Strategy<Value = PolyVectorField> {
    prop::collection::vec(poly_strategy(d), d).prop_map(PolyVectorField::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn jacobi_on_polynomial_fields(f in field_strategy(3), g in field_strategy(3), h in field_strategy(3)) {
        let fg_h = vf_bracket(&f, &vf_bracket(&g, &h).unwrap()).unwrap();
        let g_hf = vf_bracket(&g, &vf_bracket(&h, &f).unwrap()).unwrap();
        let h_fg = vf_bracket(&h, &vf_bracket(&f, &g).unwrap()).unwrap();
        prop_assert!(fg_h.add(&g_hf).add(&h_fg).is_zero());
        prop_assert!(vf_bracket(&f, &g).unwrap().add(&vf_bracket(&g, &f).unwrap()).is_zero());
    }
}
