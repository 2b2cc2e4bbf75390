use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use soergel::tate::*;
use soergel::QMatrix;

fn ungraded(dims: &[(i32, usize)]) -> UngradedComplex {
    Complex::from_dims(dims.iter().copied().collect())
}

#[test]
fn simple_objects() {
    assert_eq!(simple(0, 0), Complex::simple((0, 0)));
    assert_eq!(tate_twist(1, 2), simple(-2, -1));
    for p in -3..=3 {
        assert_eq!(tate_twist(p, 0), simple(0, -p));
    }
}

#[test]
fn weights() {
    assert_eq!(weight_of(0, 0), 0);
    for p in -3..=3 {
        // Q(p)[2p]
        assert_eq!(weight_of(-2 * p, -p), 0);
    }
    assert_eq!(weight_of(0, -1), 2);
}

#[test]
fn collapse_examples() {
    assert_eq!(iota_collapse(&tate_twist(1, 2)), ungraded(&[(0, 1)]));
    assert_eq!(iota_collapse(&simple(0, 0)), ungraded(&[(0, 1)]));
    for p in -3..=3 {
        assert_eq!(iota_collapse(&tate_twist(p, 0)), ungraded(&[(2 * p, 1)]));
    }
}

#[test]
fn collapse_commutes_with_sums_and_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = RandomComplexParams::default();
    for _ in 0..50 {
        let x = random_complex(&mut rng, &params, |c, g| (c, g));
        let y = random_complex(&mut rng, &params, |c, g| (c, g));
        assert_eq!(iota_collapse(&x.shift(1)), iota_collapse(&x).shift(1));
        assert_eq!(
            iota_collapse(&x.direct_sum(&y)).cohomology_dims(),
            iota_collapse(&x).direct_sum(&iota_collapse(&y)).cohomology_dims()
        );
    }
}

#[test]
fn truncation_examples() {
    let zero = UngradedComplex::zero();
    assert!(t_truncate_leq(&zero, 0).is_zero());
    assert!(w_truncate_leq(&zero, 0).is_zero());
    let x = ungraded(&[(0, 1), (1, 1)]);
    assert_eq!(t_truncate_leq(&x, 0), ungraded(&[(0, 1)]));
    let y = tate_twist(1, 2).direct_sum(&simple(0, 0));
    assert!(w_truncate_leq(&y, -1).is_zero());
    assert_eq!(w_truncate_leq(&y, 0), y);
}

#[test]
fn minimize_examples() {
    let contractible = UngradedComplex::new(
        [(0, 1), (1, 1)].into(),
        [(0, QMatrix::from_i64_rows(&[&[1]]))].into(),
    )
    .unwrap();
    assert!(contractible.minimize().is_zero());
    let x = ungraded(&[(0, 2), (3, 1)]);
    assert_eq!(x.minimize(), x);
    let rank_one = UngradedComplex::new(
        [(0, 2), (1, 1)].into(),
        [(0, QMatrix::from_i64_rows(&[&[1, 1]]))].into(),
    )
    .unwrap();
    assert_eq!(rank_one.minimize(), ungraded(&[(0, 1)]));
}

#[test]
fn non_complex_rejected() {
    let d = QMatrix::from_i64_rows(&[&[1]]);
    let bad = UngradedComplex::new([(0, 1), (1, 1), (2, 1)].into(), [(0, d.clone()), (1, d)].into());
    assert!(bad.is_err());
}

#[test]
fn hom_examples() {
    let q = simple(0, 0);
    assert_eq!(hom_homotopy(&q, &q, 0), 1);
    for k in -3..=3 {
        assert_eq!(hom_homotopy(&q, &tate_twist(1, 0), k), 0);
    }
    assert_eq!(hom_homotopy(&iota_collapse(&q), &iota_collapse(&tate_twist(1, 2)), 0), 1);
}

#[test]
fn axiom_examples() {
    let sample = vec![simple(0, 0)];
    assert!(check_t_axioms(&sample).passed());
    assert!(check_w_axioms(&sample).passed());
}

#[test]
fn iota_weight_exact_but_not_t_exact() {
    let witness = tate_twist(1, 2);
    assert_eq!(witness.t_amplitude(), Some((-2, -2)));
    assert_eq!(iota_collapse(&witness).t_amplitude(), Some((0, 0)));
    assert!(iota_weight_exact_on(&witness));
    // Q(1) = Q(1)[2][−2] is in the heart but collapses to degree 2
    assert!(!iota_t_exact_on(&tate_twist(1, 0)));
    for c in -3..=3 {
        for g in -3..=3 {
            let x = simple(c, g);
            assert!(iota_weight_exact_on(&x));
            assert_eq!(iota_collapse(&x).t_amplitude().unwrap().0 == c, g == 0);
        }
    }
}

#[test]
fn random_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let params = RandomComplexParams::default();
    let graded: Vec<BigradedComplex> = (0..25).map(|_| random_complex(&mut rng, &params, |c, g| (c, g))).collect();
    let plain: Vec<UngradedComplex> = (0..25).map(|_| random_complex(&mut rng, &params, |c, _| c)).collect();
    assert!(check_t_axioms(&graded).passed());
    assert!(check_w_axioms(&graded).passed());
    assert!(check_t_axioms(&plain).passed());
    assert!(check_w_axioms(&plain).passed());
    for x in &graded {
        assert!(iota_weight_exact_on(x));
    }
    for x in &plain {
        for m in -4..=4 {
            assert!(truncations_coincide(x, m));
        }
    }
}

fn graded_strategy() -> impl Strategy<Value = BigradedComplex> {
    any::<u64>().prop_map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_complex(&mut rng, &RandomComplexParams::default(), |c, g| (c, g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimize_is_idempotent_and_matches_cohomology(x in graded_strategy()) {
        let m = x.minimize();
        prop_assert!(m.has_zero_differential());
        prop_assert_eq!(m.dims(), &x.cohomology_dims());
        prop_assert_eq!(m.minimize(), m.clone());
        prop_assert!(x.minimize_with_maps().verify(&x));
    }

    #[test]
    fn minimize_preserves_homs(x in graded_strategy(), y in graded_strategy(), k in -3i32..=3) {
        prop_assert_eq!(hom_homotopy(&x, &y, k), hom_homotopy(&x.minimize(), &y.minimize(), k));
    }

    #[test]
    fn minimal_hom_formula(x in graded_strategy(), y in graded_strategy(), k in -3i32..=3) {
        let (mx, my) = (x.minimize(), y.minimize());
        let expected: usize = mx.dims().iter().map(|(&(c, g), &n)| n * my.dim((c + k, g))).sum();
        prop_assert_eq!(hom_homotopy(&mx, &my, k), expected);
    }

    #[test]
    fn degrading_at_a_point(x in graded_strategy(), y in graded_strategy()) {
        let collapsed = hom_homotopy(&iota_collapse(&x), &iota_collapse(&y), 0);
        let summed: usize = (-8..=8).map(|i| hom_homotopy(&x, &twist_shift(&y, i), 0)).sum();
        prop_assert_eq!(collapsed, summed);
    }
}

#[test]
fn twist_shift_is_invisible_after_collapse() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let y = random_complex(&mut rng, &RandomComplexParams::default(), |c, g| (c, g));
        for i in -2..=2 {
            assert_eq!(iota_collapse(&twist_shift(&y, i)), iota_collapse(&y));
        }
    }
}
