//! Seeded random formal complexes, the degrading check, and the rank-one
//! bridge to the Tate toy model.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::SparseEchelon;
use crate::error::{Error, Result};
use crate::koszul::formal::{flatten, iota_formal, FormalCategory, FormalComplex, FormalMatrix, Generator, Side};
use crate::koszul::homotopy::hom_homotopy_formal;
use crate::tate::{BigradedComplex, Complex};
use crate::weyl::{all_elements, Perm};
use crate::{q, QMatrix, Rational};

/// Shape of a random mixed complex.
#[derive(Clone, Copy, Debug)]
pub struct FormalParams {
    pub max_terms: usize,
    pub max_generators: usize,
    /// Twist labels are drawn from `−twist_span..=twist_span`.
    pub twist_span: i32,
}

impl Default for FormalParams {
    fn default() -> Self {
        FormalParams { max_terms: 4, max_generators: 3, twist_span: 1 }
    }
}

/// Random MIX complex: random terms, then each differential drawn from
/// the solutions of `d^c ∘ d^{c−1} = 0`.
pub fn random_mix_complex<R: Rng>(cat: &FormalCategory, rng: &mut R, params: FormalParams) -> Result<FormalComplex> {
    let elements = all_elements(cat.rank())?;
    let len = rng.gen_range(1..=params.max_terms.max(1));
    let start = rng.gen_range(-1..=1);
    let mut terms: BTreeMap<i32, Vec<Generator>> = BTreeMap::new();
    for c in start..start + len as i32 {
        let count = rng.gen_range(1..=params.max_generators.max(1));
        let gens = (0..count)
            .map(|_| {
                let w = elements.choose(rng).expect("S_n is nonempty").clone();
                Generator::graded(w, rng.gen_range(-params.twist_span..=params.twist_span))
            })
            .collect();
        terms.insert(c, gens);
    }
    let mut diffs: BTreeMap<i32, FormalMatrix> = BTreeMap::new();
    for c in start..start + len as i32 - 1 {
        let d = random_differential(cat, rng, &terms, diffs.get(&(c - 1)), c)?;
        diffs.insert(c, d);
    }
    cat.complex(Side::Mix, terms, diffs)
}

fn random_differential<R: Rng>(
    cat: &FormalCategory,
    rng: &mut R,
    terms: &BTreeMap<i32, Vec<Generator>>,
    prev: Option<&FormalMatrix>,
    c: i32,
) -> Result<FormalMatrix> {
    let (src, tgt) = (&terms[&c], &terms[&(c + 1)]);
    let mut blocks = Vec::new();
    let mut len = 0;
    for (t, tg) in tgt.iter().enumerate() {
        for (s, sg) in src.iter().enumerate() {
            let space = cat.hom_rule(Side::Mix, sg, tg)?;
            if space.dim() > 0 {
                blocks.push((t, s, len, space.clone()));
                len += space.dim();
            }
        }
    }
    let mut d = cat.zero_matrix(tgt, src)?;
    if len == 0 {
        return Ok(d);
    }
    let mut sys = SparseEchelon::<Rational>::new(len);
    if let Some(prev) = prev {
        for s0 in 0..prev.sources.len() {
            for t in 0..tgt.len() {
                let mut cols: Vec<(usize, Vec<Rational>)> = Vec::new();
                for (bt, s, off, space) in &blocks {
                    let e = &prev.entries[*s][s0];
                    if *bt != t || e.is_zero() {
                        continue;
                    }
                    for (j, m) in space.basis.iter().enumerate() {
                        cols.push((off + j, flatten(&m.matmul(e))));
                    }
                }
                let Some((_, first)) = cols.first() else { continue };
                for e in 0..first.len() {
                    sys.insert(cols.iter().filter(|(_, v)| v[e] != q(0)).map(|(j, v)| (*j, v[e].clone())).collect());
                }
            }
        }
    }
    let kernel = sys.kernel_basis();
    let mut coeffs = vec![q(0); len];
    for k in &kernel {
        let a = q(rng.gen_range(-1..=1));
        for (x, y) in coeffs.iter_mut().zip(k) {
            *x += &a * y;
        }
    }
    for (t, s, off, space) in &blocks {
        d.entries[*t][*s] = space.combination(&coeffs[*off..*off + space.dim()]);
    }
    Ok(d)
}

/// `(dim Hom(ιX, ιY[k]), Σ_n dim Hom(X, Y(n)[2n][k]))`.
pub fn degrading_formal(cat: &FormalCategory, x: &FormalComplex, y: &FormalComplex, k: i32) -> Result<(usize, usize)> {
    let lhs = hom_homotopy_formal(cat, &iota_formal(x)?, &iota_formal(y)?, k)?;
    let labels = |z: &FormalComplex| z.terms().values().flatten().map(|g| g.twist.unwrap_or(0).abs()).max().unwrap_or(0);
    let top = (cat.rank() * cat.rank().saturating_sub(1) / 2) as i32;
    let bound = labels(x) + labels(y) + top + 1;
    let mut rhs = 0;
    for n in -bound..=bound {
        rhs += hom_homotopy_formal(cat, x, &y.twist(n)?, k)?;
    }
    Ok((lhs, rhs))
}

/// A rank-one MIX complex as a bigraded Tate complex: `E(n)[2n]` in
/// position `c` is `Q(n)[2n − c]`.
pub fn to_tate(x: &FormalComplex) -> Result<BigradedComplex> {
    let e = Perm::identity(1);
    if x.side() != Side::Mix {
        return Err(Error::SideMismatch(format!("expected MIX, got {}", x.side())));
    }
    let index = |c: i32, n: i32| (c - 2 * n, -n);
    let mut dims: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let mut position: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    for (&c, gens) in x.terms() {
        for (i, g) in gens.iter().enumerate() {
            if g.w != e {
                return Err(Error::RankMismatch { expected: 1, got: g.w.rank() });
            }
            let slot = dims.entry(index(c, g.twist.unwrap_or(0))).or_insert(0);
            position.insert((c, i), *slot);
            *slot += 1;
        }
    }
    let mut diffs: BTreeMap<(i32, i32), QMatrix> = BTreeMap::new();
    for (&c, d) in x.stored_differentials() {
        for (t, tg) in d.targets.iter().enumerate() {
            for (s, sg) in d.sources.iter().enumerate() {
                let entry = &d.entries[t][s];
                if entry.is_zero() {
                    continue;
                }
                let (i, j) = (index(c, sg.twist.unwrap_or(0)), index(c + 1, tg.twist.unwrap_or(0)));
                let m = diffs.entry(i).or_insert_with(|| QMatrix::zeros(dims[&j], dims[&i]));
                m[(position[&(c + 1, t)], position[&(c, s)])] = entry[(0, 0)].clone();
            }
        }
    }
    Complex::new(dims, diffs)
}
