use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use soergel::koszul::*;
use soergel::tate::hom_homotopy;
use soergel::weyl::{all_elements, Perm};
use soergel::{Error, IntLaurent, QMatrix, Rational};

fn perm(images: &[usize]) -> Perm {
    Perm::from_one_line(images).unwrap()
}

fn g(w: &Perm, n: i32) -> Generator {
    Generator::graded(w.clone(), n)
}

fn stalk(cat: &FormalCategory, side: Side, c: i32, gens: Vec<Generator>) -> FormalComplex {
    cat.complex(side, BTreeMap::from([(c, gens)]), BTreeMap::new()).unwrap()
}

/// `a → b` in positions 0, 1 with entry `m`.
fn two_term(cat: &FormalCategory, side: Side, a: Generator, b: Generator, m: QMatrix) -> FormalComplex {
    let mut d = cat.zero_matrix(&[b.clone()], &[a.clone()]).unwrap();
    d.entries[0][0] = m;
    cat.complex(side, BTreeMap::from([(0, vec![a]), (1, vec![b])]), BTreeMap::from([(0, d)]))
        .unwrap()
}

#[test]
fn hom_rule_examples() {
    let cat = FormalCategory::new(2).unwrap();
    let e = Perm::identity(2);
    let s = perm(&[2, 1]);
    assert_eq!(cat.hom_rule(Side::Mix, &g(&e, 0), &g(&e, 0)).unwrap().dim(), 1);
    assert_eq!(cat.hom_rule(Side::Mix, &g(&e, 0), &g(&e, 1)).unwrap().dim(), 0);
    let (us, ue) = (Generator::ungraded(s.clone()), Generator::ungraded(e.clone()));
    assert_eq!(cat.hom_rule(Side::K, &us, &us).unwrap().dim(), 2);
    assert_eq!(cat.hom_rule(Side::Perv, &ue, &us).unwrap().dim(), 1);
    // Q → D_s only lands one twist up; D_s → Q stays at the same twist
    assert_eq!(cat.hom_rule(Side::Mix, &g(&e, 0), &g(&s, 0)).unwrap().dim(), 0);
    assert_eq!(cat.hom_rule(Side::Mix, &g(&e, 0), &g(&s, 1)).unwrap().dim(), 1);
    assert_eq!(cat.hom_rule(Side::Mix, &g(&s, 0), &g(&e, 0)).unwrap().dim(), 1);
    assert_eq!(cat.hom_rule(Side::PervGr, &g(&s, 0), &g(&s, 1)).unwrap().dim(), 1);
    // graded pieces over all twists add up to the ungraded space
    for x in all_elements(2).unwrap() {
        for y in all_elements(2).unwrap() {
            let total: usize = (-3..=3)
                .map(|n| cat.hom_rule(Side::Mix, &g(&x, 0), &g(&y, n)).unwrap().dim())
                .sum();
            let k = cat
                .hom_rule(Side::K, &Generator::ungraded(x.clone()), &Generator::ungraded(y.clone()))
                .unwrap()
                .dim();
            assert_eq!(total, k, "{x} → {y}");
        }
    }
}

#[test]
fn side_mismatch_is_an_error() {
    let cat = FormalCategory::new(2).unwrap();
    let e = Perm::identity(2);
    let err = cat.hom_rule(Side::K, &g(&e, 0), &g(&e, 0)).unwrap_err();
    assert!(matches!(err, Error::SideMismatch(_)));
    let x = stalk(&cat, Side::Mix, 0, vec![g(&e, 0)]);
    assert!(matches!(kos_formal(&x), Err(Error::SideMismatch(_))));
    assert!(matches!(iota_formal(&x).unwrap().twist(1), Err(Error::SideMismatch(_))));
    let k = stalk(&cat, Side::K, 0, vec![Generator::ungraded(e)]);
    assert!(hom_homotopy_formal(&cat, &x, &k, 0).is_err());
}

#[test]
fn entries_outside_the_rule_are_rejected() {
    let cat = FormalCategory::new(2).unwrap();
    let e = Perm::identity(2);
    let mut d = cat.zero_matrix(&[g(&e, 1)], &[g(&e, 0)]).unwrap();
    d.entries[0][0] = QMatrix::identity(1);
    let terms = BTreeMap::from([(0, vec![g(&e, 0)]), (1, vec![g(&e, 1)])]);
    assert!(cat.complex(Side::Mix, terms, BTreeMap::from([(0, d)])).is_err());
}

#[test]
fn nonzero_dsquare_is_rejected() {
    let cat = FormalCategory::new(1).unwrap();
    let e = Perm::identity(1);
    let one = QMatrix::identity(1);
    let terms: BTreeMap<i32, Vec<Generator>> = (0..3).map(|c| (c, vec![g(&e, 0)])).collect();
    let diffs = (0..2)
        .map(|c| {
            let mut d = cat.zero_matrix(&[g(&e, 0)], &[g(&e, 0)]).unwrap();
            d.entries[0][0] = one.clone();
            (c, d)
        })
        .collect();
    assert!(cat.complex(Side::Mix, terms, diffs).is_err());
}

#[test]
fn homotopy_hom_examples() {
    let cat = FormalCategory::new(2).unwrap();
    let e = Perm::identity(2);
    let s = perm(&[2, 1]);
    let ds = stalk(&cat, Side::Mix, 0, vec![g(&s, 0)]);
    assert_eq!(hom_homotopy_formal(&cat, &ds, &ds, 0).unwrap(), 1);
    assert_eq!(hom_homotopy_formal(&cat, &ds, &ds.twist(1).unwrap(), 0).unwrap(), 1);
    assert_eq!(hom_homotopy_formal(&cat, &ds, &ds, 1).unwrap(), 0);
    let ks = iota_formal(&ds).unwrap();
    assert_eq!(hom_homotopy_formal(&cat, &ks, &ks, 0).unwrap(), 2);

    // the cone of an isomorphism is contractible
    let cone = two_term(&cat, Side::Mix, g(&e, 0), g(&e, 0), QMatrix::identity(1));
    for k in -2..=2 {
        assert_eq!(hom_homotopy_formal(&cat, &cone, &cone, k).unwrap(), 0);
        assert_eq!(hom_homotopy_formal(&cat, &ds, &cone, k).unwrap(), 0);
    }
    // Hom(X, Y[k]) agrees with the shifted complex
    let t = stalk(&cat, Side::Mix, 0, vec![g(&e, 0)]);
    let map = cat.hom_rule(Side::Mix, &g(&s, 0), &g(&e, 0)).unwrap().basis[0].clone();
    let x = two_term(&cat, Side::Mix, g(&s, 0), g(&e, 0), map);
    for k in -2..=2 {
        assert_eq!(
            hom_homotopy_formal(&cat, &t, &x, k).unwrap(),
            hom_homotopy_formal(&cat, &t, &x.shift(k), 0).unwrap()
        );
    }
}

fn corpus(n: usize, count: usize, seed: u64) -> (FormalCategory, Vec<FormalComplex>) {
    let cat = FormalCategory::new(n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = (0..count)
        .map(|_| random_mix_complex(&cat, &mut rng, FormalParams::default()).unwrap())
        .collect();
    (cat, xs)
}

#[test]
fn random_corpus_is_well_formed() {
    for n in [2, 3] {
        let (cat, xs) = corpus(n, 40, 7);
        let nontrivial = xs.iter().filter(|x| !x.stored_differentials().is_empty()).count();
        assert!(nontrivial > 5, "rank {n}: only {nontrivial} complexes with differentials");
        for x in &xs {
            assert!(cat.dsquare_check(x).unwrap());
            assert!(x.terms().len() <= 4);
            assert!(x.terms().values().all(|t| t.len() <= 3));
        }
    }
}

#[test]
fn square_commutes_on_corpus() {
    for n in [2, 3] {
        let (_, xs) = corpus(n, 60, 11);
        for x in &xs {
            assert!(square_check(x).unwrap());
        }
    }
}

#[test]
fn gkos_intertwines_twists() {
    let (_, xs) = corpus(3, 20, 3);
    for x in &xs {
        for n in [-1, 1, 2] {
            assert_eq!(gkos(&x.twist(n).unwrap()).unwrap(), gkos(x).unwrap().twist(n).unwrap());
            assert_eq!(iota_formal(&x.twist(n).unwrap()).unwrap(), iota_formal(x).unwrap());
        }
    }
}

#[test]
fn degrading_on_rank_two_corpus() {
    let (cat, xs) = corpus(2, 12, 5);
    for (i, x) in xs.iter().enumerate() {
        let y = &xs[(i + 1) % xs.len()];
        for k in -1..=1 {
            let (lhs, rhs) = degrading_formal(&cat, x, y, k).unwrap();
            assert_eq!(lhs, rhs, "pair {i}, k = {k}");
        }
    }
}

#[test]
fn degrading_on_rank_three_corpus() {
    let (cat, xs) = corpus(3, 4, 9);
    for (i, x) in xs.iter().enumerate() {
        let y = &xs[(i + 1) % xs.len()];
        let (lhs, rhs) = degrading_formal(&cat, x, y, 0).unwrap();
        assert_eq!(lhs, rhs, "pair {i}");
    }
}

#[test]
fn rank_one_matches_tate_model() {
    let (cat, xs) = corpus(1, 30, 13);
    for (i, x) in xs.iter().enumerate() {
        let y = &xs[(i + 3) % xs.len()];
        let (tx, ty) = (to_tate(x).unwrap(), to_tate(y).unwrap());
        for k in -2..=2 {
            assert_eq!(
                hom_homotopy_formal(&cat, x, y, k).unwrap(),
                hom_homotopy(&tx, &ty, k),
                "pair {i}, k = {k}"
            );
        }
    }
}

#[test]
fn dual_algebra_rank_two() {
    let dual = DualAlgebra::new(&soergel::soergel::SoergelCategory::new(2).unwrap()).unwrap();
    let e = Perm::identity(2);
    let s = perm(&[2, 1]);
    let (ei, si) = (dual.index_of(&e).unwrap(), dual.index_of(&s).unwrap());
    let c = dual.cartan_matrix();
    assert_eq!(c[ei][ei], 1);
    assert_eq!(c[si][si], 2);
    assert_eq!(c[ei][si], 1);
    assert_eq!(c[si][ei], 1);
    assert_eq!(dual.radical_step(), 1);

    let v = |k: i32| IntLaurent::v_pow(k);
    assert_eq!(dual.ext_dims(&e, &e, 0).unwrap(), v(0));
    assert_eq!(dual.ext_dims(&e, &s, 1).unwrap(), v(1));
    assert_eq!(dual.ext_dims(&s, &e, 1).unwrap(), v(1));
    assert_eq!(dual.ext_dims(&e, &e, 2).unwrap(), v(2));
    assert!(dual.ext_dims(&s, &s, 1).unwrap().is_zero());
    assert!(dual.ext_dims(&s, &e, 2).unwrap().is_zero());
}

fn check_euler(n: usize) {
    let dual = DualAlgebra::new(&soergel::soergel::SoergelCategory::new(n).unwrap()).unwrap();
    let res = dual.resolutions(dual.default_max_len()).unwrap();
    assert!(res.iter().all(|r| r.complete));
    let chi = dual.euler_matrix(&res);
    let inv = dual.inverse_cartan().unwrap();
    let k = chi.len();
    for x in 0..k {
        for y in 0..k {
            assert_eq!(Rational::from_integer(chi[x][y].clone()), inv[(x, y)], "({x}, {y})");
        }
    }
    // graded: Σ_k (−1)^k Ext^k(v) times the graded Cartan matrix is 1
    let cartan = dual.graded_cartan();
    for x in 0..k {
        let e: Vec<IntLaurent> = (0..k)
            .map(|z| {
                let mut acc = IntLaurent::zero();
                for i in 0..res[x].terms.len() {
                    let t = res[x].ext(z, i);
                    acc = if i % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                acc
            })
            .collect();
        for y in 0..k {
            let mut sum = IntLaurent::zero();
            for z in 0..k {
                sum = &sum + &(&e[z] * &cartan[z][y]);
            }
            let expect = if x == y { IntLaurent::one() } else { IntLaurent::zero() };
            assert_eq!(sum, expect, "graded ({x}, {y})");
        }
    }
}

#[test]
fn euler_characteristic_inverts_cartan() {
    for n in 1..=3 {
        check_euler(n);
    }
}

#[test]
fn koszulity_small_ranks() {
    for n in 1..=3 {
        let report = koszulity_check(n).unwrap();
        assert!(report.koszul(), "rank {n}: {:?}", report.violations);
        assert_eq!(report.step, 1);
        assert_eq!(report.max_k, n * (n - 1));
    }
}

#[test]
fn equivalences_preserve_homs() {
    let (cat, xs) = corpus(2, 8, 21);
    for (i, x) in xs.iter().enumerate() {
        let y = &xs[(i + 2) % xs.len()];
        let (gx, gy) = (gkos(x).unwrap(), gkos(y).unwrap());
        let (ix, iy) = (iota_formal(x).unwrap(), iota_formal(y).unwrap());
        let (kx, ky) = (kos_formal(&ix).unwrap(), kos_formal(&iy).unwrap());
        for k in -3..=3 {
            assert_eq!(
                hom_homotopy_formal(&cat, x, y, k).unwrap(),
                hom_homotopy_formal(&cat, &gx, &gy, k).unwrap()
            );
            assert_eq!(
                hom_homotopy_formal(&cat, &ix, &iy, k).unwrap(),
                hom_homotopy_formal(&cat, &kx, &ky, k).unwrap()
            );
        }
    }
}

#[test]
fn mix_stalks_have_no_extensions() {
    let cat = FormalCategory::new(3).unwrap();
    let els = all_elements(3).unwrap();
    for x in &els {
        for y in &els {
            for n in -1..=2 {
                let a = stalk(&cat, Side::Mix, 0, vec![g(x, 0)]);
                let b = stalk(&cat, Side::Mix, 0, vec![g(y, n)]);
                for k in [-2, -1, 1, 2] {
                    assert_eq!(hom_homotopy_formal(&cat, &a, &b, k).unwrap(), 0);
                }
            }
        }
    }
}

#[test]
fn graded_cartan_is_the_hecke_pairing() {
    use soergel::hecke::PairingConvention;
    for n in [2, 3] {
        let cat = soergel::soergel::SoergelCategory::new(n).unwrap();
        let dual = DualAlgebra::new(&cat).unwrap();
        let h = cat.hecke();
        let gc = dual.graded_cartan();
        let c = dual.cartan_matrix();
        for (i, x) in dual.elements().iter().enumerate() {
            for (j, y) in dual.elements().iter().enumerate() {
                let p = h
                    .pairing(h.kl_basis(x).unwrap(), h.kl_basis(y).unwrap(), PairingConvention::Inverse)
                    .unwrap();
                assert_eq!(gc[i][j], p, "({x}, {y})");
                assert_eq!(soergel::Integer::from(c[i][j]), p.eval_one());
            }
        }
    }
}

#[test]
fn rank_one_dual_algebra() {
    let dual = DualAlgebra::new(&soergel::soergel::SoergelCategory::new(1).unwrap()).unwrap();
    assert_eq!(dual.algebra().dim(), 1);
    let e = Perm::identity(1);
    assert_eq!(dual.ext_dims(&e, &e, 0).unwrap(), IntLaurent::one());
    for k in 1..=3 {
        assert!(dual.ext_dims(&e, &e, k).unwrap().is_zero());
    }
}

#[test]
fn truncated_resolution_is_flagged() {
    let dual = DualAlgebra::new(&soergel::soergel::SoergelCategory::new(3).unwrap()).unwrap();
    let r = dual.resolution(0, 2).unwrap();
    assert!(!r.complete);
    assert_eq!(r.terms.len(), 3);
}

#[test]
fn compose_with_identity() {
    let (cat, xs) = corpus(3, 10, 17);
    for x in &xs {
        for d in x.stored_differentials().values() {
            let mut id = cat.zero_matrix(&d.sources, &d.sources).unwrap();
            for (i, row) in id.entries.iter_mut().enumerate() {
                row[i] = QMatrix::identity(row[i].rows());
            }
            assert_eq!(&cat.compose(d, &id).unwrap(), d);
        }
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn square_and_twists(seed in any::<u64>(), n in 2usize..=3, t in -2i32..=2) {
            let cat = FormalCategory::new(n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_mix_complex(&cat, &mut rng, FormalParams::default()).unwrap();
            prop_assert!(cat.dsquare_check(&x).unwrap());
            prop_assert!(square_check(&x).unwrap());
            prop_assert!(square_check(&x.twist(t).unwrap()).unwrap());
            prop_assert_eq!(gkos(&x.twist(t).unwrap()).unwrap(), gkos(&x).unwrap().twist(t).unwrap());
            prop_assert!(hom_homotopy_formal(&cat, &x, &x, 0).unwrap() >= 1);
        }

        #[test]
        fn degrading_rank_two(seed in any::<u64>(), k in -1i32..=1) {
            let cat = FormalCategory::new(2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_mix_complex(&cat, &mut rng, FormalParams::default()).unwrap();
            let y = random_mix_complex(&cat, &mut rng, FormalParams::default()).unwrap();
            let (lhs, rhs) = degrading_formal(&cat, &x, &y, k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
