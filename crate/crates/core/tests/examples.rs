//! Worked examples for each public operation, checked against reference
//! arithmetic written independently in test code.

mod common;

use std::collections::BTreeSet;

use mvk::centripetal::{central_cone, check_monotonicity, game_fixpoint, game_step, half_set};
use mvk::lgroup::{comparability_split, good_sequence_of, good_sequence_order_test, ExtremalState};
use mvk::mcnaughton::{below_pointwise, compose};
use mvk::spectra::{
    below_order, enumerate_ideals, generated_subalgebra, is_below_minimal, level_set_indicator,
    quotient, separating_element, zeroset_indicator, Ideal, SpectrumPoint,
};
use mvk::{ChainProduct, Error, PLFunction, Rational, Term, UnitalLGroup};
use common::*;

fn alg(ds: &[u32]) -> ChainProduct {
    ChainProduct::new(ds.to_vec()).unwrap()
}

#[test]
fn oplus_neg_and_derived_operations() {
    let x = el(&[2], &[(1, 2)]);
    assert_eq!(fracs(&x.oplus(&x).unwrap()), [oplus((1, 2), (1, 2))]);
    assert_eq!(fracs(&x.odot(&x).unwrap()), [odot((1, 2), (1, 2))]);
    let y = el(&[3, 2], &[(1, 3), (1, 2)]);
    assert_eq!(fracs(&y.oplus(&y).unwrap()), [(2, 3), (1, 1)]);
    assert_eq!(fracs(&el(&[3], &[(1, 3)]).neg()), [neg((1, 3))]);
    let (a, b) = (el(&[5], &[(2, 5)]), el(&[5], &[(3, 5)]));
    assert_eq!(fracs(&a.join(&b).unwrap()), [max((2, 5), (3, 5))]);
    assert_eq!(fracs(&a.meet(&b).unwrap()), [min((2, 5), (3, 5))]);
    let zero = alg(&[3, 2]).zero();
    assert_eq!(y.oplus(&zero).unwrap(), y);
    assert_eq!(y.join(&zero).unwrap(), y);
    assert!(zero.neg().is_one());
}

#[test]
fn cross_algebra_operations_are_rejected() {
    let a = el(&[2], &[(1, 2)]);
    let b = el(&[4], &[(1, 2)]);
    assert!(matches!(a.oplus(&b), Err(Error::AlgebraMismatch { .. })));
    assert!(a.natural_leq(&b).is_err());
    assert!(below_order(&a, &b).is_err());
}

#[test]
fn natural_order_and_distance() {
    let (x, y) = (el(&[3, 3], &[(1, 3), (2, 3)]), el(&[3, 3], &[(2, 3), (1, 3)]));
    assert!(!x.natural_leq(&y).unwrap());
    assert!(x.natural_leq(&x).unwrap());
    assert!(alg(&[3, 3]).zero().natural_leq(&x).unwrap());
    let (p, q) = (el(&[4], &[(1, 4)]), el(&[4], &[(3, 4)]));
    let expected = oplus(odot((1, 4), neg((3, 4))), odot((3, 4), neg((1, 4))));
    assert_eq!(fracs(&p.chang_distance(&q).unwrap()), [expected]);
    assert_eq!(expected, (1, 2));
    assert!(p.chang_distance(&p).unwrap().is_zero());
    let a = alg(&[4]);
    assert!(a.zero().chang_distance(&a.one()).unwrap().is_one());
}

#[test]
fn terms_apply_by_structural_recursion() {
    let a = el(&[2, 3], &[(1, 2), (2, 3)]);
    assert_eq!(a.apply_term(&Term::var()), a);
    let s = Term::sigma();
    assert_eq!(fracs(&el(&[2], &[(1, 2)]).apply_term(&s)), [sigma((1, 2))]);
    assert_eq!(fracs(&el(&[3], &[(1, 3)]).apply_term(&s)), [(0, 1)]);
    assert_eq!(fracs(&a.apply_term(&s)), [sigma((1, 2)), sigma((2, 3))]);
}

#[test]
fn boolean_and_characteristic_elements() {
    let a = alg(&[3, 2]);
    assert!(a.zero().is_boolean() && a.one().is_characteristic());
    assert!(!el(&[2], &[(1, 2)]).is_boolean());
    assert!(!el(&[2], &[(1, 2)]).is_characteristic());
    assert!(el(&[3, 2], &[(1, 1), (0, 1)]).is_boolean());
    for x in alg(&[2, 3, 4]).elements() {
        assert_eq!(x.is_boolean(), x.is_characteristic());
    }
}

#[test]
fn ideals_and_quotients() {
    assert_eq!(enumerate_ideals(&alg(&[3])).len(), 2);
    assert_eq!(enumerate_ideals(&alg(&[2, 2])).len(), 4);
    let a3 = alg(&[2, 3, 4]);
    let zero = Ideal::zero(&a3);
    assert_eq!(zero.vanishing_set(), &BTreeSet::from([0, 1, 2]));
    assert!(Ideal::new(&a3, [1]).unwrap().is_prime());
    assert!(!Ideal::new(&a3, [0, 1]).unwrap().is_prime());
    assert!(Ideal::zero(&alg(&[5])).is_prime());
    let x = el(&[2, 3], &[(1, 2), (2, 3)]);
    assert_eq!(quotient(&x, SpectrumPoint(1)).unwrap(), r((2, 3)));
    assert!(quotient(&alg(&[2, 3]).zero(), SpectrumPoint(0)).unwrap().is_zero());
    let y = el(&[2, 3], &[(1, 2), (1, 3)]);
    let s = x.oplus(&y).unwrap();
    for i in 0..2 {
        let p = SpectrumPoint(i);
        let lhs = frac(&quotient(&s, p).unwrap());
        let rhs = oplus(frac(&quotient(&x, p).unwrap()), frac(&quotient(&y, p).unwrap()));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn centripetal_order_examples() {
    let (x, y) = (el(&[2, 3], &[(1, 1), (0, 1)]), el(&[2, 3], &[(1, 2), (1, 3)]));
    assert!(below_order(&x, &y).unwrap());
    assert!(below_order(&y, &y).unwrap());
    assert!(!below_order(&el(&[3], &[(2, 3)]), &el(&[3], &[(1, 3)])).unwrap());
    assert!(is_below_minimal(&alg(&[4]).zero()));
    assert!(!is_below_minimal(&el(&[2], &[(1, 2)])));
    assert!(!is_below_minimal(&el(&[4], &[(1, 4)])));
}

#[test]
fn indicators_and_separation() {
    let a = alg(&[2, 3, 3]);
    assert!(zeroset_indicator(&a, &[]).unwrap().is_one());
    let all: Vec<_> = (0..3).map(SpectrumPoint).collect();
    assert!(zeroset_indicator(&a, &all).unwrap().is_zero());
    let w = zeroset_indicator(&a, &[SpectrumPoint(0), SpectrumPoint(2)]).unwrap();
    assert_eq!(fracs(&w), [(0, 1), (1, 1), (0, 1)]);
    let x = el(&[2, 3, 3], &[(1, 2), (1, 3), (1, 1)]);
    assert_eq!(fracs(&level_set_indicator(&x, &r((1, 3))).unwrap()), [(1, 1), (0, 1), (1, 1)]);
    assert!(level_set_indicator(&x, &r((2, 3))).unwrap().is_one());
    assert!(level_set_indicator(&a.zero(), &Rational::zero()).unwrap().is_zero());
    assert!(level_set_indicator(&x, &r((3, 2))).is_err());
    let b = alg(&[1, 1]);
    let s = separating_element(&b, SpectrumPoint(0), SpectrumPoint(1)).unwrap();
    assert_eq!(fracs(&s), [(0, 1), (1, 1)]);
    let t = separating_element(&b, SpectrumPoint(1), SpectrumPoint(0)).unwrap();
    assert_eq!(t, s.neg());
    let c = alg(&[1, 1, 1]);
    let u = separating_element(&c, SpectrumPoint(1), SpectrumPoint(2)).unwrap();
    assert_eq!(fracs(&u), [(1, 1), (0, 1), (1, 1)]);
    assert!(matches!(
        separating_element(&c, SpectrumPoint(1), SpectrumPoint(1)),
        Err(Error::SamePoint(1))
    ));
}

#[test]
fn generated_subalgebras() {
    let a = alg(&[2]);
    assert_eq!(generated_subalgebra(&a, &[]).unwrap(), vec![a.zero(), a.one()]);
    let half = el(&[2], &[(1, 2)]);
    assert_eq!(generated_subalgebra(&a, &[half]).unwrap().len(), 3);
    let q = el(&[4], &[(1, 4)]);
    assert_eq!(generated_subalgebra(&alg(&[4]), &[q]).unwrap().len(), 5);
    let six = alg(&[6]);
    let third = el(&[6], &[(1, 3)]);
    let sub = generated_subalgebra(&six, &[third]).unwrap();
    let vals: Vec<Frac> = sub.iter().map(|e| fracs(e)[0]).collect();
    assert_eq!(vals, [(0, 1), (1, 3), (2, 3), (1, 1)]);
}

#[test]
fn pl_operations() {
    let id = PLFunction::identity();
    assert_eq!(
        id.neg(),
        PLFunction::clamped_affine(&Rational::from_integer(-1), &Rational::one())
    );
    let double = id.oplus(&id);
    assert_eq!(double.breakpoints(), [r((0, 1)), r((1, 2)), r((1, 1))]);
    assert_eq!(
        id.odot(&id),
        PLFunction::clamped_affine(&Rational::from_integer(2), &Rational::from_integer(-1))
    );
}

#[test]
fn sigma_star_values() {
    let s = PLFunction::sigma_star();
    for x in [(0, 1), (1, 2), (1, 1), (1, 3), (3, 4), (2, 5), (1, 5)] {
        assert_eq!(frac(&s.eval(&r(x)).unwrap()), sigma(x), "at {x:?}");
    }
    assert_eq!(frac(&s.eval(&r((2, 5))).unwrap()), (1, 5));
    assert_eq!(PLFunction::identity().apply_term(&Term::sigma()), s);
    assert_eq!(id_eval(&PLFunction::identity(), (2, 7)), (2, 7));
    assert!(s.eval(&r((-1, 2))).is_err());
}

fn id_eval(f: &PLFunction, x: Frac) -> Frac {
    frac(&f.eval(&r(x)).unwrap())
}

#[test]
fn term_application_and_composition() {
    let half = PLFunction::constant(Rational::half()).unwrap();
    assert_eq!(half.apply_term(&Term::var()), half);
    assert_eq!(half.apply_term(&Term::sigma()), half);
    let f = PLFunction::identity().oplus(&PLFunction::identity());
    assert_eq!(compose(&PLFunction::identity(), &f), f);
    let c = PLFunction::constant(r((2, 5))).unwrap();
    assert_eq!(
        compose(&PLFunction::sigma_star(), &c),
        PLFunction::constant(r((1, 5))).unwrap()
    );
    // σ*(min(1, 2x)): 0 up to 1/6, then 6x − 1 up to 1/3, then 1
    let g = compose(&PLFunction::sigma_star(), &f);
    assert_eq!(g.breakpoints(), [r((0, 1)), r((1, 6)), r((1, 3)), r((1, 1))]);
    for k in 0..=100 {
        let x = (k, 100);
        assert_eq!(id_eval(&g, x), sigma(oplus(x, x)));
    }
}

#[test]
fn pointwise_centripetal_order() {
    let id = PLFunction::identity();
    assert!(below_pointwise(&id, &id));
    assert!(below_pointwise(&id.apply_term(&Term::sigma()), &id));
    let one = PLFunction::constant(Rational::one()).unwrap();
    let quarter = PLFunction::constant(r((1, 4))).unwrap();
    assert!(!below_pointwise(&one, &quarter));
}

#[test]
fn bounded_iteration_on_identity_never_stabilizes() {
    let it = PLFunction::identity().iterate_term(&Term::sigma(), 6);
    assert_eq!(it.stabilized_at, None);
    assert_eq!(it.steps.len(), 7);
}

#[test]
fn game_examples() {
    let b = el(&[3, 2], &[(1, 1), (0, 1)]);
    assert_eq!(game_step(&b), b);
    assert_eq!(fracs(&game_step(&el(&[5], &[(2, 5)]))), [sigma((2, 5))]);
    let m = el(&[2, 3], &[(1, 2), (2, 3)]);
    assert_eq!(fracs(&game_step(&m)), [(1, 2), (1, 1)]);
    assert_eq!(game_fixpoint(&b).n, 0);
    assert_eq!(game_fixpoint(&el(&[2], &[(1, 2)])).n, 0);
    let t = game_fixpoint(&el(&[5], &[(2, 5)]));
    assert_eq!(t.n, 2);
    let path: Vec<Frac> = t.steps[..=t.n].iter().map(|e| fracs(e)[0]).collect();
    // reference trace by iterating the term on fractions
    let mut expect = vec![(2, 5)];
    while sigma(*expect.last().unwrap()) != *expect.last().unwrap() {
        expect.push(sigma(*expect.last().unwrap()));
    }
    assert_eq!(path, expect);
    assert_eq!(t.to_string(), "2/5 → 1/5 → 0; n=2");
}

#[test]
fn half_sets_and_cones() {
    assert!(half_set(&el(&[1, 1], &[(1, 1), (0, 1)])).is_empty());
    assert_eq!(
        half_set(&el(&[2, 3], &[(1, 2), (1, 3)])),
        BTreeSet::from([SpectrumPoint(0)])
    );
    assert_eq!(half_set(&el(&[4], &[(2, 4)])), BTreeSet::from([SpectrumPoint(0)]));
    let b = el(&[2, 2], &[(1, 1), (0, 1)]);
    assert_eq!(central_cone(&b), vec![b.clone()]);
    assert_eq!(central_cone(&el(&[3], &[(1, 3)])), vec![alg(&[3]).zero()]);
    let cone = central_cone(&el(&[2, 3], &[(1, 2), (1, 3)]));
    let vals: Vec<Vec<Frac>> = cone.iter().map(fracs).collect();
    assert_eq!(vals, [vec![(0, 1), (0, 1)], vec![(1, 1), (0, 1)]]);
}

#[test]
fn monotonicity_examples() {
    let a = el(&[5], &[(2, 5)]);
    assert_eq!(check_monotonicity(&a, &a).unwrap(), Some(true));
    assert_eq!(check_monotonicity(&el(&[5], &[(1, 5)]), &a).unwrap(), Some(true));
    let (h, nh) = (el(&[2], &[(1, 2)]), el(&[2], &[(0, 1)]));
    assert_eq!(check_monotonicity(&nh, &h).unwrap(), None);
}

#[test]
fn gamma_correspondence() {
    let g = UnitalLGroup::new(vec![2]).unwrap();
    assert_eq!(g.gamma(), alg(&[2]));
    assert_eq!(UnitalLGroup::new(vec![1, 1]).unwrap().gamma().carrier_size(), 4);
    let g = UnitalLGroup::new(vec![2, 3]).unwrap();
    for a in g.gamma().elements() {
        assert_eq!(g.to_mv(&g.from_mv(&a).unwrap()).unwrap(), a);
    }
    // truncated sum is ⊕
    let (x, y) = (g.element(vec![1, 2]).unwrap(), g.element(vec![2, 2]).unwrap());
    let sum = x.add(&y).unwrap().meet(&g.unit_element()).unwrap();
    let mv = g.to_mv(&x).unwrap().oplus(&g.to_mv(&y).unwrap()).unwrap();
    assert_eq!(g.to_mv(&sum).unwrap(), mv);
}

#[test]
fn good_sequences() {
    let g = UnitalLGroup::new(vec![3]).unwrap();
    assert!(good_sequence_of(&g.zero()).unwrap().entries.is_empty());
    let s = good_sequence_of(&g.element(vec![4]).unwrap()).unwrap();
    let vals: Vec<Frac> = s.entries.iter().map(|e| fracs(e)[0]).collect();
    assert_eq!(vals, [(1, 1), (1, 3)]);
    assert_eq!(oplus(vals[0], vals[1]), vals[0]);
    assert_eq!(add(vals[0], vals[1]), (4, 3));
    let inside = good_sequence_of(&g.element(vec![2]).unwrap()).unwrap();
    assert_eq!(inside.entries.len(), 1);
    assert!(matches!(
        good_sequence_of(&g.element(vec![-1]).unwrap()),
        Err(Error::NegativeElement(0))
    ));
}

#[test]
fn comparability_examples() {
    let g = UnitalLGroup::new(vec![2, 3]).unwrap();
    let h = g.element(vec![1, 2]).unwrap();
    let s = comparability_split(&h, &h).unwrap();
    assert_eq!(s.below, BTreeSet::from([0, 1]));
    assert!(s.above.is_empty() && s.e_below.is_zero() && s.e_above.is_one());
    let k = g.element(vec![2, 1]).unwrap();
    let s = comparability_split(&h, &k).unwrap();
    assert_eq!((s.below, s.above), (BTreeSet::from([0]), BTreeSet::from([1])));
    assert_eq!(fracs(&s.e_below), [(0, 1), (1, 1)]);
    assert_eq!(fracs(&s.e_above), [(1, 1), (0, 1)]);
    let neg = g.element(vec![-5, 3]).unwrap();
    assert_eq!(comparability_split(&neg, &k).unwrap().shift, 3);
    let other = UnitalLGroup::new(vec![3, 2]).unwrap().zero();
    assert!(comparability_split(&h, &other).is_err());
}

#[test]
fn order_test_examples() {
    let g = UnitalLGroup::new(vec![3]).unwrap();
    let e = |c| g.element(vec![c]).unwrap();
    assert!(good_sequence_order_test(&e(4), &e(4)).unwrap());
    assert!(good_sequence_order_test(&e(4), &e(5)).unwrap());
    assert!(good_sequence_order_test(&e(4), &e(2)).unwrap());
}

#[test]
fn extremal_states() {
    let g = UnitalLGroup::new(vec![2, 3]).unwrap();
    for i in 0..2 {
        let s = ExtremalState::new(&g, i).unwrap();
        assert!(s.value(&g.unit_element()).unwrap().is_one());
        assert!(s.is_discrete());
        let (x, y) = (g.element(vec![1, -4]).unwrap(), g.element(vec![3, 2]).unwrap());
        let lhs = s.value(&x.add(&y).unwrap()).unwrap();
        assert_eq!(lhs, s.value(&x).unwrap() + s.value(&y).unwrap());
    }
    let s2 = ExtremalState::new(&g, 1).unwrap();
    assert_eq!(s2.value(&g.element(vec![0, 1]).unwrap()).unwrap(), r((1, 3)));
    assert_eq!(s2.image_generator(), r((1, 3)));
    assert!(ExtremalState::new(&g, 2).is_err());
}
