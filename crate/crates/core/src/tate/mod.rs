//! Toy model of Tate motives over a point: bigraded complexes for the graded
//! side, ungraded complexes for the collapsed side, the collapse functor ι,
//! and checks of the t-structure and weight structure axioms.
//!
//! `Q(p)[q]` sits at `(c, g) = (−q, −p)` and has weight `c − 2g`.

mod complex;
mod random;

use std::collections::BTreeMap;

pub use complex::{hom_homotopy, BigradedComplex, Complex, ComplexIndex, Minimal, UngradedComplex};
pub use random::{random_complex, random_minimized, RandomComplexParams};

use crate::QMatrix;

/// `Q(−g)[−c]`.
pub fn simple(c: i32, g: i32) -> BigradedComplex {
    Complex::simple((c, g))
}

/// `Q(p)[q]`.
pub fn tate_twist(p: i32, q: i32) -> BigradedComplex {
    simple(-q, -p)
}

/// Weight of the simple at `(c, g)`.
pub fn weight_of(c: i32, g: i32) -> i32 {
    (c, g).weight()
}

/// `ι X = ⊕_i X(i)[2i]` collapsed: `(c, g)` lands in degree `c − 2g`.
/// Blocks inside a collapsed component are ordered by `g`.
pub fn iota_collapse(x: &BigradedComplex) -> UngradedComplex {
    let target = |(c, g): (i32, i32)| c - 2 * g;
    let mut layout: BTreeMap<i32, Vec<((i32, i32), usize)>> = BTreeMap::new();
    for (&i, &n) in x.dims() {
        layout.entry(target(i)).or_default().push((i, n));
    }
    let offset = |i: (i32, i32)| -> usize {
        layout[&target(i)]
            .iter()
            .take_while(|(j, _)| *j != i)
            .map(|(_, n)| n)
            .sum()
    };
    let dims: BTreeMap<i32, usize> = layout
        .iter()
        .map(|(&c, blocks)| (c, blocks.iter().map(|(_, n)| n).sum()))
        .collect();
    let mut diffs: BTreeMap<i32, QMatrix> = BTreeMap::new();
    for (&i, &n) in x.dims() {
        let j = i.next();
        let m = x.dim(j);
        if m == 0 {
            continue;
        }
        let c = target(i);
        let d = x.differential(i);
        let big = diffs
            .entry(c)
            .or_insert_with(|| QMatrix::zeros(dims.get(&(c + 1)).copied().unwrap_or(0), dims[&c]));
        let (ro, co) = (offset(j), offset(i));
        for r in 0..m {
            for s in 0..n {
                big[(ro + r, co + s)] = d[(r, s)].clone();
            }
        }
    }
    Complex::new(dims, diffs).expect("collapse preserves d∘d = 0")
}

/// `Y(i)[2i]`: `(c, g) ↦ (c − 2i, g − i)`. Invisible after collapsing.
pub fn twist_shift(y: &BigradedComplex, i: i32) -> BigradedComplex {
    y.reindex(|(c, g)| (c - 2 * i, g - i))
}

/// Which truncation a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    T,
    W,
}

impl Structure {
    fn degree<I: ComplexIndex>(self, i: I) -> i32 {
        match self {
            Structure::T => i.cohomological(),
            Structure::W => i.weight(),
        }
    }

    /// `X^{≤m}`, as a summand of the minimal model.
    pub fn truncate_leq<I: ComplexIndex>(self, x: &Complex<I>, m: i32) -> Complex<I> {
        x.minimize().restrict(|i| self.degree(i) <= m)
    }

    /// `X^{≥m}`, as a summand of the minimal model.
    pub fn truncate_geq<I: ComplexIndex>(self, x: &Complex<I>, m: i32) -> Complex<I> {
        x.minimize().restrict(|i| self.degree(i) >= m)
    }

    pub fn is_leq<I: ComplexIndex>(self, x: &Complex<I>, m: i32) -> bool {
        x.cohomology_dims().keys().all(|&i| self.degree(i) <= m)
    }

    pub fn is_geq<I: ComplexIndex>(self, x: &Complex<I>, m: i32) -> bool {
        x.cohomology_dims().keys().all(|&i| self.degree(i) >= m)
    }
}

pub fn t_truncate_leq<I: ComplexIndex>(x: &Complex<I>, m: i32) -> Complex<I> {
    Structure::T.truncate_leq(x, m)
}

pub fn t_truncate_geq<I: ComplexIndex>(x: &Complex<I>, m: i32) -> Complex<I> {
    Structure::T.truncate_geq(x, m)
}

pub fn w_truncate_leq<I: ComplexIndex>(x: &Complex<I>, m: i32) -> Complex<I> {
    Structure::W.truncate_leq(x, m)
}

pub fn w_truncate_geq<I: ComplexIndex>(x: &Complex<I>, m: i32) -> Complex<I> {
    Structure::W.truncate_geq(x, m)
}

/// Outcome of checking the three axioms on a sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub structure: Structure,
    pub samples: usize,
    pub nesting: bool,
    pub orthogonality: bool,
    pub triangle: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.nesting && self.orthogonality && self.triangle
    }
}

/// t-structure axioms: `D^{≤0} ⊂ D^{≤1}`, `D^{≥1} ⊂ D^{≥0}`,
/// `Hom(D^{≤0}, D^{≥1}) = 0`, and `A → X → B` with `A ≤ 0`, `B ≥ 1`.
pub fn check_t_axioms<I: ComplexIndex>(sample: &[Complex<I>]) -> AxiomReport {
    check_axioms(Structure::T, sample)
}

/// Weight structure axioms: `w≤0 ⊂ w≤1`, `w≥1 ⊂ w≥0`,
/// `Hom(w≥0, w≤−1) = 0`, and `A → X → B` with `A ≥ 1`, `B ≤ 0`.
pub fn check_w_axioms<I: ComplexIndex>(sample: &[Complex<I>]) -> AxiomReport {
    check_axioms(Structure::W, sample)
}

fn check_axioms<I: ComplexIndex>(s: Structure, sample: &[Complex<I>]) -> AxiomReport {
    let nesting = sample.iter().all(|x| {
        let a = s.truncate_leq(x, 0);
        let b = s.truncate_geq(x, 1);
        s.is_leq(&a, 1) && s.is_geq(&b, 0)
    });
    let orthogonality = sample.iter().all(|x| {
        sample.iter().all(|y| match s {
            Structure::T => hom_homotopy(&s.truncate_leq(x, 0), &s.truncate_geq(y, 1), 0) == 0,
            Structure::W => hom_homotopy(&s.truncate_geq(x, 0), &s.truncate_leq(y, -1), 0) == 0,
        })
    });
    let triangle = sample.iter().all(|x| {
        let (a, b) = match s {
            Structure::T => (s.truncate_leq(x, 0), s.truncate_geq(x, 1)),
            Structure::W => (s.truncate_geq(x, 1), s.truncate_leq(x, 0)),
        };
        let in_place = match s {
            Structure::T => s.is_leq(&a, 0) && s.is_geq(&b, 1),
            Structure::W => s.is_geq(&a, 1) && s.is_leq(&b, 0),
        };
        in_place && a.direct_sum(&b).cohomology_dims() == x.cohomology_dims()
    });
    AxiomReport {
        structure: s,
        samples: sample.len(),
        nesting,
        orthogonality,
        triangle,
    }
}

/// `X ∈ w≤0 ⇔ ιX ∈ w≤0` and the same for `≥ 0`.
pub fn iota_weight_exact_on(x: &BigradedComplex) -> bool {
    let y = iota_collapse(x);
    Structure::W.is_leq(x, 0) == Structure::W.is_leq(&y, 0)
        && Structure::W.is_geq(x, 0) == Structure::W.is_geq(&y, 0)
}

/// `X ∈ t≤0 ⇔ ιX ∈ t≤0` and the same for `≥ 0`.
pub fn iota_t_exact_on(x: &BigradedComplex) -> bool {
    let y = iota_collapse(x);
    Structure::T.is_leq(x, 0) == Structure::T.is_leq(&y, 0)
        && Structure::T.is_geq(x, 0) == Structure::T.is_geq(&y, 0)
}

/// On the ungraded side the two truncations agree.
pub fn truncations_coincide(x: &UngradedComplex, m: i32) -> bool {
    t_truncate_leq(x, m) == w_truncate_leq(x, m) && t_truncate_geq(x, m) == w_truncate_geq(x, m)
}
