mod common;

use common::*;
use proptest::prelude::*;
use tropical_approx::oracle::direct_distance;
use tropical_approx::{
    anti_distance, hilbert_distance, metric::same_part, part_of, reduce_problem, supports, Finite, NegInf, PosInf,
};

fn tag() -> impl Strategy<Value = E> {
    prop_oneof![
        1 => Just(NegInf),
        1 => Just(PosInf),
        6 => (-5i64..=5).prop_map(Finite),
    ]
}

fn vec_of(n: usize, s: impl Strategy<Value = E>) -> impl Strategy<Value = V> {
    prop::collection::vec(s, n).prop_map(|e| V::new(e).unwrap())
}

fn triple() -> impl Strategy<Value = (V, V, V)> {
    (1usize..=4).prop_flat_map(|n| (vec_of(n, tag()), vec_of(n, tag()), vec_of(n, tag())))
}

fn finite_pair() -> impl Strategy<Value = (V, V)> {
    (1usize..=4).prop_flat_map(|n| (vec_of(n, (-3i64..=3).prop_map(Finite)), vec_of(n, (-3i64..=3).prop_map(Finite))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn agrees_with_case_analysis((x, y, _) in triple()) {
        prop_assert_eq!(hilbert_distance(&x, &y).unwrap(), direct_distance(&x, &y));
    }

    #[test]
    fn symmetric((x, y, _) in triple()) {
        prop_assert_eq!(hilbert_distance(&x, &y).unwrap(), hilbert_distance(&y, &x).unwrap());
    }

    #[test]
    fn triangle_with_upper_addition((x, y, z) in triple()) {
        let lhs = hilbert_distance(&x, &z).unwrap();
        let rhs = hilbert_distance(&x, &y).unwrap().upper_add(hilbert_distance(&y, &z).unwrap());
        prop_assert!(lhs <= rhs, "d(x,z) = {} > {}", lhs, rhs);
    }

    #[test]
    fn projective((x, _, _) in triple(), lam in -5i64..=5) {
        let d = hilbert_distance(&x, &x.scale(Finite(lam))).unwrap();
        if x.iter().any(|e| e.is_finite()) {
            prop_assert_eq!(d, Finite(0));
        } else {
            prop_assert_eq!(d, NegInf);
        }
    }

    #[test]
    fn finite_exactly_on_parts((x, y, _) in triple()) {
        let finite = hilbert_distance(&x, &y).unwrap() < PosInf;
        prop_assert_eq!(finite, same_part(&x, &y));
        prop_assert_eq!(same_part(&x, &y), part_of(&x) == part_of(&y));
    }

    #[test]
    fn anti_distance_is_negated((x, y, _) in triple()) {
        prop_assert_eq!(anti_distance(&x, &y).unwrap().negate(), hilbert_distance(&x, &y).unwrap());
    }

    /// `d(x, y) = inf { μ − λ : y + λ ≤ x ≤ y + μ }` over an integer grid wide
    /// enough to contain the optimum.
    #[test]
    fn variational_form((x, y) in finite_pair()) {
        let mut best = i64::MAX;
        for lam in -7i64..=7 {
            for mu in lam..=7 {
                if y.scale(Finite(lam)).le(&x) && x.le(&y.scale(Finite(mu))) {
                    best = best.min(mu - lam);
                }
            }
        }
        prop_assert_eq!(hilbert_distance(&x, &y).unwrap(), Finite(best));
    }
}

#[test]
fn supports_of_mixed_vector() {
    let s = supports(&v("1 -inf +inf 0"));
    assert_eq!(s.supp.members(), &[0, 3]);
    assert_eq!(s.lsupp.members(), &[0, 1, 3]);
    assert_eq!(s.usupp.members(), &[0, 2, 3]);
    assert_eq!(s.supp, s.lsupp.intersection(&s.usupp));
}

#[test]
fn reduction_round_trip() {
    let mut r = rng(31);
    let mut checked = 0;
    for _ in 0..300 {
        let n = 4;
        let space = semimodule(&mut r, n, 3, -3, 3, 0.35);
        let x = vector(&mut r, n, -3, 3, 0.3);
        let Ok(red) = reduce_problem(&space, &x) else {
            continue;
        };
        checked += 1;
        assert!(red.point.is_finite());
        assert_eq!(red.semimodule.distance_to(&red.point).unwrap(), red.distance);
        let lifted = red.lift(&red.semimodule.project(&red.point).unwrap()).unwrap();
        assert_eq!(lifted, space.project(&x).unwrap(), "x = {x}");
        assert_eq!(hilbert_distance(&x, &lifted).unwrap(), red.distance);
    }
    assert!(checked > 50, "only {checked} reducible instances");
}
