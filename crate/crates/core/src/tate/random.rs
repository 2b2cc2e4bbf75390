//! Seeded random complexes.

use std::collections::BTreeMap;

use rand::Rng;

use super::complex::{Complex, ComplexIndex};
use crate::{q, QMatrix};

#[derive(Clone, Debug)]
pub struct RandomComplexParams {
    /// Cohomological degrees are drawn from `-span..=span`.
    pub span: i32,
    /// Extra gradings `g` are drawn from `-span..=span`.
    pub twist_span: i32,
    /// Number of summands (simples plus contractible pairs).
    pub pieces: usize,
}

impl Default for RandomComplexParams {
    fn default() -> Self {
        RandomComplexParams {
            span: 3,
            twist_span: 2,
            pieces: 4,
        }
    }
}

/// Direct sum of random simples, zero differential.
pub fn random_minimized<I: ComplexIndex, R: Rng>(
    rng: &mut R,
    params: &RandomComplexParams,
    index: impl Fn(i32, i32) -> I,
) -> Complex<I> {
    let mut dims = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=params.pieces) {
        let i = index(
            rng.gen_range(-params.span..=params.span),
            rng.gen_range(-params.twist_span..=params.twist_span),
        );
        *dims.entry(i).or_insert(0) += 1;
    }
    Complex::from_dims(dims)
}

/// Simples plus contractible `[Q → Q]` pieces, then a random change of
/// basis in every component so the differential is not block diagonal.
pub fn random_complex<I: ComplexIndex, R: Rng>(
    rng: &mut R,
    params: &RandomComplexParams,
    index: impl Fn(i32, i32) -> I,
) -> Complex<I> {
    let mut x = random_minimized(rng, params, &index);
    for _ in 0..rng.gen_range(0..=params.pieces) {
        let i = index(
            rng.gen_range(-params.span..=params.span),
            rng.gen_range(-params.twist_span..=params.twist_span),
        );
        let pair = Complex::new(
            [(i, 1), (i.next(), 1)].into(),
            [(i, QMatrix::from_i64_rows(&[&[rng.gen_range(1..=3)]]))].into(),
        )
        .expect("one-step complex");
        x = x.direct_sum(&pair);
    }
    let change: BTreeMap<I, (QMatrix, QMatrix)> = x
        .dims()
        .iter()
        .map(|(&i, &n)| {
            let p = random_unimodular(rng, n);
            let inv = p.inverse().expect("unitriangular product");
            (i, (p, inv))
        })
        .collect();
    let diffs = x
        .dims()
        .keys()
        .filter(|i| x.dim(i.next()) > 0)
        .map(|&i| {
            let d = x.differential(i);
            (i, change[&i.next()].0.matmul(&d).matmul(&change[&i].1))
        })
        .collect();
    Complex::new(x.dims().clone(), diffs).expect("conjugation preserves d∘d = 0")
}

fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    let mut lower = QMatrix::identity(n);
    let mut upper = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = q(rng.gen_range(-2..=2));
            upper[(j, i)] = q(rng.gen_range(-2..=2));
        }
    }
    lower.matmul(&upper)
}
