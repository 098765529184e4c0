use super::*;
use crate::mcg::{transvection_matrix, SignedTwist};

fn torus_letters() -> (SignedTwist, SignedTwist) {
    (
        SignedTwist::positive(CurveClass::with_coords("a", &[1, 0])),
        SignedTwist::positive(CurveClass::with_coords("b", &[0, 1])),
    )
}

fn e1() -> FibrationData {
    let (a, b) = torus_letters();
    let w: TwistWord = [a, b].into_iter().collect();
    FibrationData::over_sphere(FiberSurface::torus(), w.power(6))
}

#[test]
fn e1_is_valid() {
    let f = e1();
    let r = validate(&f);
    assert!(r.passed(), "{r:?}");
    assert_eq!(critical_counts(&f), (12, 0));
    assert_eq!(eta(&f), 12);
    assert_eq!(euler_characteristic(&f), 12);
}

#[test]
fn broken_closure_is_reported() {
    let (a, _) = torus_letters();
    let f = FibrationData::over_sphere(FiberSurface::torus(), TwistWord::new(vec![a]));
    let r = validate(&f);
    assert!(!r.closure.is_ok());
    assert!(r.allowability.is_pass());
}

#[test]
fn separating_vanishing_cycle_is_not_allowable() {
    let fiber = FiberSurface::closed(2);
    let c = CurveClass::separating("s", 4);
    let w = TwistWord::new(vec![SignedTwist::positive(c.clone()), SignedTwist::negative(c)]);
    let r = validate(&FibrationData::over_sphere(fiber, w));
    assert!(!r.allowability.is_ok());
    assert!(r.closure.is_pass());
}

#[test]
fn wrong_bundle_count_fails_shape() {
    let f = FibrationData::new(FiberSurface::torus(), BaseSurface::new(1, 0), TwistWord::empty(), vec![]);
    assert!(!validate(&f).shape.is_ok());
}

#[test]
fn hurwitz_moves_are_inverse_and_keep_closure() {
    let f = e1();
    for i in 0..11 {
        for dir in [HurwitzDirection::Forward, HurwitzDirection::Backward] {
            let g = f.hurwitz_move(i, dir).unwrap();
            assert!(validate(&g).passed());
            assert_eq!(g.closure_matrix().unwrap(), f.closure_matrix().unwrap());
            let back = g.hurwitz_move(i, dir.inverse()).unwrap();
            assert!(back.same_monodromy(&f), "i = {i}, {dir:?}");
        }
    }
    assert!(f.hurwitz_move(11, HurwitzDirection::Forward).is_err());
}

#[test]
fn hurwitz_forward_on_ab() {
    let (a, b) = torus_letters();
    let f = FibrationData::over_sphere(FiberSurface::torus(), TwistWord::new(vec![a.clone(), b.clone()]));
    let g = f.hurwitz_move(0, HurwitzDirection::Forward).unwrap();
    assert!(g.lefschetz.letters()[0].same_twist(&b));
    // t_b^-1 t_a t_b is the twist about T_b^-1 (a).
    let expected = transvection_matrix(&b).inverse().apply(&a.curve.homology).unwrap();
    assert!(g.lefschetz.letters()[1].curve.homology.same_up_to_sign(&expected));
    assert_eq!(g.lefschetz.matrix(g.fiber).unwrap(), f.lefschetz.matrix(f.fiber).unwrap());
}

#[test]
fn conjugation_and_cancelling_pairs_keep_closure() {
    let (a, b) = torus_letters();
    let f = e1();
    let h = TwistWord::new(vec![a.clone(), b.inverse(), b.clone(), b]);
    let g = f.conjugate(&h).unwrap();
    assert!(validate(&g).passed());
    let c = CurveClass::with_coords("c", &[1, 1]);
    let p = f.insert_cancelling_pair(5, c).unwrap();
    assert!(validate(&p).passed());
    assert_eq!(critical_counts(&p), (13, 1));
    assert_eq!(eta(&p), eta(&f) - 0 + 1 - 1);
    assert!(f.insert_cancelling_pair(13, a.curve).is_err());
}

fn torus_bundle_over_torus() -> FibrationData {
    let (a, _) = torus_letters();
    let w = TwistWord::new(vec![a]);
    FibrationData::new(FiberSurface::torus(), BaseSurface::new(1, 0), TwistWord::empty(), vec![w.clone(), w.power(2)])
}

#[test]
fn fiber_sum_closes() {
    let (a, b) = torus_letters();
    let h = TwistWord::new(vec![b.clone(), a.clone(), b]);
    let s = fiber_sum(&e1(), &torus_bundle_over_torus(), &h).unwrap();
    assert!(validate(&s).passed());
    assert_eq!(s.base, BaseSurface::new(1, 0));
    let s2 = fiber_sum(&torus_bundle_over_torus(), &e1(), &TwistWord::new(vec![a])).unwrap();
    assert!(validate(&s2).passed());
    assert_eq!(euler_characteristic(&s2), 12);
    let g2 = FibrationData::over_sphere(FiberSurface::closed(2), TwistWord::empty());
    assert!(matches!(fiber_sum(&e1(), &g2, &TwistWord::empty()), Err(Error::FiberMismatch(_))));
    let open = FibrationData::trivial_bundle(FiberSurface::torus(), BaseSurface::disk());
    assert!(matches!(fiber_sum(&e1(), &open, &TwistWord::empty()), Err(Error::Unsupported(_))));
}

#[test]
fn reverse_orientation_closes_and_is_involutive() {
    let (a, b) = torus_letters();
    let base = torus_bundle_over_torus();
    let f = fiber_sum(&e1(), &base, &TwistWord::new(vec![b])).unwrap();
    let r = reverse_orientation(&f);
    assert!(validate(&r).passed());
    assert_eq!(eta(&r), -eta(&f));
    let rr = reverse_orientation(&r);
    assert!(rr.same_monodromy(&f));

    let open = FibrationData::new(
        FiberSurface::torus(),
        BaseSurface::new(0, 3),
        TwistWord::new(vec![a.clone()]),
        vec![TwistWord::new(vec![a.clone()]), TwistWord::new(vec![a.inverse(), a])],
    );
    assert!(reverse_orientation(&reverse_orientation(&open)).same_monodromy(&open));
}

#[test]
fn structure_twists() {
    let f = e1();
    let psi = StructureTwist::new(crate::surfaces::Pi1Kind::Torus, vec![1, -2]).unwrap();
    let g = twist(&f, &psi).unwrap();
    assert_eq!(g.structure_twist.coords(), &[1, -2]);
    assert!(validate(&g).passed());
    assert!(twist_normalize(&g.clone().with_surjective(true)).structure_twist.is_zero());
    assert!(!twist_normalize(&g).structure_twist.is_zero());
    let g2 = FibrationData::over_sphere(FiberSurface::closed(2), TwistWord::empty());
    assert!(matches!(twist(&g2, &psi), Err(Error::NonExceptionalTwist)));
}

#[test]
fn singular_compatibility() {
    let (a, b) = torus_letters();
    let ok = SingularMonodromyData {
        component: 0,
        vanishing_cycle: a.curve.clone(),
        images: vec![TwistWord::new(vec![a.clone(), a.clone()])],
    };
    assert!(singular_compatibility_check(FiberSurface::torus(), &ok).unwrap().is_pass());
    let bad = SingularMonodromyData {
        images: vec![TwistWord::new(vec![b])],
        ..ok
    };
    assert!(!singular_compatibility_check(FiberSurface::torus(), &bad).unwrap().is_ok());
}

fn genus2_open() -> FibrationData {
    let c = crate::mcg::chain_curves(2);
    let t = |i: usize| SignedTwist::positive(c[i].clone());
    FibrationData::new(
        FiberSurface::closed(2),
        BaseSurface::new(1, 2),
        TwistWord::new(vec![t(0), t(2), t(4).inverse()]),
        vec![
            TwistWord::new(vec![t(1), t(3)]),
            TwistWord::new(vec![t(2).inverse(), t(0)]),
            TwistWord::new(vec![t(3)]),
        ],
    )
}

/// Independent route: each lifted generator evaluated directly downstairs.
fn check_lifts(f: &FibrationData, comp: &CoverComponent) {
    let lifted = &comp.fibration;
    for (letter, word) in lifted.lefschetz.letters().iter().zip(&comp.lefschetz_lifts) {
        assert_eq!(transvection_matrix(letter), f.evaluate(word).unwrap());
    }
    for (w, word) in lifted.bundle.iter().zip(&comp.bundle_lifts) {
        assert_eq!(w.matrix(lifted.fiber).unwrap(), f.evaluate(word).unwrap());
    }
}

#[test]
fn degree_one_cover_is_identity() {
    let f = genus2_open();
    let comps = pullback_cover(&f, &CoverAssignment::trivial(1, 3)).unwrap();
    assert_eq!(comps.len(), 1);
    assert!(comps[0].fibration.same_monodromy(&f));
}

#[test]
fn trivial_cover_splits_into_copies() {
    let f = genus2_open();
    let comps = pullback_cover(&f, &CoverAssignment::trivial(3, 3)).unwrap();
    assert_eq!(comps.len(), 3);
    for c in &comps {
        assert!(c.fibration.same_monodromy(&f));
    }
}

#[test]
fn connected_covers_lift_consistently() {
    let f = genus2_open();
    let swap = vec![1, 0];
    let id = vec![0, 1];
    let cases = [
        vec![swap.clone(), id.clone(), id.clone()],
        vec![id.clone(), swap.clone(), swap.clone()],
        vec![swap.clone(), swap.clone(), id.clone()],
        vec![id.clone(), id.clone(), swap.clone()],
    ];
    for perms in cases {
        let comps = pullback_cover(&f, &CoverAssignment::new(2, perms.clone())).unwrap();
        assert_eq!(comps.len(), 1, "{perms:?}");
        let c = &comps[0];
        assert_eq!(c.degree(), 2);
        let lifted = &c.fibration;
        assert_eq!(lifted.critical_count(), 2 * f.critical_count());
        assert_eq!(lifted.base.euler_characteristic(), 2 * f.base.euler_characteristic());
        assert_eq!(euler_characteristic(lifted), 2 * euler_characteristic(&f));
        assert_eq!(eta(lifted), 2 * eta(&f));
        assert!(validate(lifted).passed());
        check_lifts(&f, c);
    }
    let three = CoverAssignment::new(3, vec![vec![1, 2, 0], vec![0, 2, 1], vec![1, 0, 2]]);
    let comps = pullback_cover(&f, &three).unwrap();
    assert_eq!(comps.len(), 1);
    check_lifts(&f, &comps[0]);
}

#[test]
fn cover_rejects_bad_input() {
    let f = genus2_open();
    assert!(pullback_cover(&f, &CoverAssignment::new(2, vec![vec![0, 0]; 3])).is_err());
    assert!(pullback_cover(&f, &CoverAssignment::trivial(2, 2)).is_err());
    let mut branched = CoverAssignment::trivial(2, 3);
    branched.meridians = vec![vec![1, 0]];
    assert!(matches!(pullback_cover(&f, &branched), Err(Error::InvalidCover(_))));
    assert!(matches!(pullback_cover(&e1(), &CoverAssignment::trivial(2, 0)), Err(Error::Unsupported(_))));
}
