//! The acceptance battery as deterministic, seeded report functions.
//!
//! Each criterion returns a pass flag and a one-line summary. Reports hold
//! no timings, so two runs with the same seed print identical bytes.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coinvariant::{CoinvariantElement, CoinvariantRing};
use crate::error::{Error, Result};
use crate::hecke::PairingConvention;
use crate::koszul::{
    degrading_formal, koszulity_check, random_mix_complex, square_check, DualAlgebra, FormalCategory, FormalParams,
};
use crate::soergel::{hom_dimensions, hom_ungraded, summands_from_kl, SoergelCategory, Summand};
use crate::tate::{
    iota_collapse, iota_t_exact_on, iota_weight_exact_on, random_complex, random_minimized, simple, tate_twist,
    truncations_coincide, RandomComplexParams, UngradedComplex,
};
use crate::weyl::{all_elements, Perm, Word};
use crate::{Integer, Rational};

/// Number of criteria produced by [`run`].
pub const CRITERIA: u8 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

/// Runs criteria `1..=CRITERIA` in order.
pub fn run(seed: u64) -> SelftestReport {
    SelftestReport {
        seed,
        criteria: (1..=CRITERIA).map(|id| criterion(id, seed)).collect(),
    }
}

/// One criterion; errors are reported as failures.
pub fn criterion(id: u8, seed: u64) -> CriterionResult {
    let (name, outcome) = match id {
        1 => ("coinvariant dimensions", coinvariant_dimensions()),
        2 => ("Demazure calculus", demazure_calculus()),
        3 => ("Bott-Samelson decomposition vs Hecke", bott_samelson_oracle()),
        4 => ("Hom formula", hom_formula()),
        5 => ("degrading", degrading(seed)),
        6 => ("endomorphisms of the top module", endomorphisms_top()),
        7 => ("Tate point structures", tate_point(seed)),
        8 => ("Koszul square", koszul_square(seed, 500)),
        9 => ("dual algebra homology", dual_homology()),
        _ => ("unknown", Err(Error::Invariant(format!("no criterion {id}")))),
    };
    let (passed, detail) = match outcome {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, name, passed, detail }
}

type Outcome = Result<(bool, String)>;

fn rng_for(seed: u64, id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id))
}

fn coinvariant_dimensions() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, expected) in [(2, 2), (3, 6), (4, 24)] {
        let ring = CoinvariantRing::build(n)?;
        let p = ring.poincare();
        let top = ring.top_degree();
        let palindromic = p.terms().all(|(k, c)| p.coeff(top - k) == *c);
        ok &= ring.dim() == expected && palindromic;
        parts.push(format!("n={n}: dim {} P={p}", ring.dim()));
    }
    Ok((ok, parts.join("; ")))
}

fn demazure_calculus() -> Outcome {
    let mut checks = 0usize;
    let mut failures = 0usize;
    for n in 2..=4 {
        let ring = CoinvariantRing::build(n)?;
        let basis: Vec<CoinvariantElement> = (0..ring.dim()).map(|i| ring.basis_element(i)).collect();
        let d = |i: usize, f: &CoinvariantElement| ring.demazure(i, f);
        let mut check = |ok: bool| {
            checks += 1;
            if !ok {
                failures += 1;
            }
        };
        for f in &basis {
            for i in 1..n {
                check(d(i, &d(i, f)).is_zero());
                for j in i + 1..n {
                    if j == i + 1 {
                        check(d(i, &d(j, &d(i, f))) == d(j, &d(i, &d(j, f))));
                    } else {
                        check(d(i, &d(j, f)) == d(j, &d(i, f)));
                    }
                }
            }
        }
        for i in 1..n {
            let s = Perm::simple(n, i);
            for f in &basis {
                let sf = ring.weyl_act(&s, f);
                let df = d(i, f);
                for g in &basis {
                    let lhs = d(i, &ring.mul(f, g));
                    let rhs = ring.mul(&df, g).add(&ring.mul(&sf, &d(i, g)));
                    check(lhs == rhs);
                }
            }
        }
    }
    Ok((failures == 0, format!("{checks} identities on staircase bases, n ≤ 4, {failures} failures")))
}

/// Longer words checked in `S₄` on top of every word of length ≤ 3.
pub const S4_WORDS: &[&[usize]] = &[
    &[1, 2, 1, 2],
    &[1, 2, 3, 2],
    &[2, 1, 3, 2],
    &[3, 2, 1, 2],
    &[1, 3, 2, 1],
    &[2, 3, 2, 1],
    &[1, 2, 3, 2, 1],
    &[2, 1, 3, 2, 1],
    &[1, 3, 2, 1, 3],
    &[3, 2, 1, 2, 3],
    &[1, 2, 1, 3, 2],
    &[2, 3, 1, 2, 1],
];

/// Every word over `1..n` of length at most `max_len`.
pub fn all_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::new(vec![])];
    let mut frontier = vec![Vec::<usize>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 1..n {
                let mut v = w.clone();
                v.push(i);
                out.push(Word::new(v.clone()));
                next.push(v);
            }
        }
        frontier = next;
    }
    out
}

fn bs_matches_oracle(cat: &SoergelCategory, word: &Word) -> Result<bool> {
    let bs = cat.bott_samelson(word)?;
    let found = cat.decompose(&bs)?.multiplicities();
    let hecke = cat.hecke();
    let expected = summands_from_kl(&hecke.kl_expand(&hecke.product_bs(word)?)?)?;
    let mut counts: BTreeMap<Summand, usize> = BTreeMap::new();
    for s in expected {
        *counts.entry(s).or_insert(0) += 1;
    }
    Ok(found == counts)
}

fn bott_samelson_oracle() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    let s3 = SoergelCategory::new(3)?;
    for w in all_words(3, 4) {
        total += 1;
        if !bs_matches_oracle(&s3, &w)? {
            bad.push(format!("S3:{w}"));
        }
    }
    let s4 = SoergelCategory::new(4)?;
    let long = S4_WORDS.iter().map(|w| Word::new(w.to_vec()));
    for w in all_words(4, 3).into_iter().chain(long) {
        total += 1;
        if !bs_matches_oracle(&s4, &w)? {
            bad.push(format!("S4:{w}"));
        }
    }
    let detail = if bad.is_empty() {
        format!("{total} words agree")
    } else {
        format!("{} of {total} disagree: {}", bad.len(), bad.join(" "))
    };
    Ok((bad.is_empty(), detail))
}

fn hom_formula() -> Outcome {
    let cat = SoergelCategory::new(3)?;
    let h = cat.hecke();
    let mut pairs = 0;
    let mut bad = 0;
    for x in all_elements(3)? {
        for y in all_elements(3)? {
            let dims = hom_dimensions(&*cat.indecomposable(&x)?, &*cat.indecomposable(&y)?)?;
            let expect = h.pairing(h.kl_basis(&x)?, h.kl_basis(&y)?, PairingConvention::Inverse)?;
            pairs += 1;
            if dims != expect {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{pairs} pairs in S3, {bad} mismatches")))
}

fn degrading(seed: u64) -> Outcome {
    let mut module_pairs = 0;
    let mut bad = 0;
    for n in [2, 3] {
        let cat = SoergelCategory::new(n)?;
        let mut corpus: Vec<_> = all_elements(n)?
            .iter()
            .map(|w| cat.indecomposable(w).map(|m| (*m).clone()))
            .collect::<Result<_>>()?;
        for w in all_words(n, 2) {
            corpus.push(cat.bott_samelson(&w)?);
        }
        for m in &corpus {
            for k in &corpus {
                module_pairs += 1;
                let graded = hom_dimensions(m, k)?.eval_one();
                if graded != Integer::from(hom_ungraded(m, k)?.len()) {
                    bad += 1;
                }
            }
        }
    }
    let mut complex_pairs = 0;
    let mut rng = rng_for(seed, 5);
    for (n, count) in [(2, 10), (3, 4)] {
        let cat = FormalCategory::new(n)?;
        let xs = (0..count)
            .map(|_| random_mix_complex(&cat, &mut rng, FormalParams::default()))
            .collect::<Result<Vec<_>>>()?;
        for (i, x) in xs.iter().enumerate() {
            let y = &xs[(i + 1) % xs.len()];
            for k in -1..=1 {
                complex_pairs += 1;
                let (lhs, rhs) = degrading_formal(&cat, x, y, k)?;
                if lhs != rhs {
                    bad += 1;
                }
            }
        }
    }
    Ok((
        bad == 0,
        format!("{module_pairs} module pairs, {complex_pairs} complex pairs, {bad} mismatches"),
    ))
}

fn endomorphisms_top() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        let cat = SoergelCategory::new(n)?;
        let d = cat.indecomposable(&Perm::longest(n))?;
        let end = hom_dimensions(&d, &d)?;
        let ring = cat.ring().poincare();
        ok &= end == ring;
        parts.push(format!("n={n}: End={end} C={ring}"));
    }
    Ok((ok, parts.join("; ")))
}

fn tate_point(seed: u64) -> Outcome {
    let mut rng = rng_for(seed, 7);
    let params = RandomComplexParams::default();
    let mut weight_exact = true;
    for c in -3..=3 {
        for g in -2..=2 {
            weight_exact &= iota_weight_exact_on(&simple(c, g));
        }
    }
    for _ in 0..200 {
        weight_exact &= iota_weight_exact_on(&random_complex(&mut rng, &params, |c, g| (c, g)));
    }
    let witness = tate_twist(1, 2);
    let collapsed = iota_collapse(&witness);
    let witness_ok = !iota_t_exact_on(&witness) && collapsed == UngradedComplex::simple(0);
    let untwisted_t_exact = (-3..=3).all(|c| iota_t_exact_on(&simple(c, 0)));

    let mut coincide = true;
    for _ in 0..1000 {
        let x: UngradedComplex = random_minimized(&mut rng, &params, |c, _| c);
        coincide &= (-4..=4).all(|m| truncations_coincide(&x, m));
    }
    let ok = weight_exact && witness_ok && untwisted_t_exact && coincide;
    Ok((
        ok,
        format!(
            "weight-exact {weight_exact}; ι(Q(1)[2]) = Q and not t-exact {witness_ok}; \
             t-exact without twist {untwisted_t_exact}; truncations agree on 1000 complexes {coincide}"
        ),
    ))
}

/// `square_check` on `cases` seeded complexes in ranks 2 and 3.
pub fn koszul_square(seed: u64, cases: usize) -> Outcome {
    let mut failures = 0;
    let mut parts = Vec::new();
    for n in [2, 3] {
        let cat = FormalCategory::new(n)?;
        let mut rng = rng_for(seed, 8 + n as u64);
        let mut with_diff = 0;
        for _ in 0..cases {
            let x = random_mix_complex(&cat, &mut rng, FormalParams::default())?;
            if !x.stored_differentials().is_empty() {
                with_diff += 1;
            }
            if !square_check(&x)? || !cat.dsquare_check(&x)? {
                failures += 1;
            }
        }
        parts.push(format!("rank {n}: {cases} cases ({with_diff} with differentials)"));
    }
    Ok((failures == 0, format!("{}, {failures} failures", parts.join(", "))))
}

fn dual_homology() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        let dual = DualAlgebra::new(&SoergelCategory::new(n)?)?;
        if n == 2 {
            ok &= dual.algebra().dim() == 5;
            parts.push(format!("dim A(S2) = {}", dual.algebra().dim()));
        }
        let res = dual.resolutions(dual.default_max_len())?;
        let chi = dual.euler_matrix(&res);
        let inv = dual
            .inverse_cartan()
            .ok_or_else(|| Error::Invariant("Cartan matrix is singular".into()))?;
        let k = chi.len();
        let euler = (0..k).all(|x| (0..k).all(|y| Rational::from_integer(chi[x][y].clone()) == inv[(x, y)]));
        ok &= euler;
        parts.push(format!("Euler identity rank {n}: {euler}"));
    }
    for n in 1..=3 {
        let r = koszulity_check(n)?;
        ok &= r.koszul();
        parts.push(format!(
            "rank {n}: Ext^k pure in degree {}·k, {}·k with degrees doubled, up to k={} ({})",
            r.step,
            2 * r.step,
            r.max_k,
            if r.koszul() { "koszul" } else { "not koszul" }
        ));
    }
    Ok((ok, parts.join("; ")))
}
