//! Bounded complexes of finite-dimensional (graded) vector spaces.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::hash::Hash;

use num_traits::Zero;

use crate::arith::Matrix;
use crate::error::{Error, Result};
use crate::{q, QMatrix, Rational};

/// Position of a component: a cohomological degree plus whatever extra
/// grading the differential preserves.
pub trait ComplexIndex: Copy + Ord + Hash + Debug {
    fn cohomological(self) -> i32;
    /// Same extra grading, cohomological degree replaced by `c`.
    fn with_cohomological(self, c: i32) -> Self;
    /// Weight of the simple object sitting at this index.
    fn weight(self) -> i32;

    fn next(self) -> Self {
        self.with_cohomological(self.cohomological() + 1)
    }

    fn prev(self) -> Self {
        self.with_cohomological(self.cohomological() - 1)
    }
}

/// Ungraded: the index is the cohomological degree and `Q[q]` has weight `−q`.
impl ComplexIndex for i32 {
    fn cohomological(self) -> i32 {
        self
    }
    fn with_cohomological(self, c: i32) -> Self {
        c
    }
    fn weight(self) -> i32 {
        self
    }
}

/// `(c, g)`: `Q(p)[q]` sits at `(−q, −p)` and has weight `2p − q = c − 2g`.
impl ComplexIndex for (i32, i32) {
    fn cohomological(self) -> i32 {
        self.0
    }
    fn with_cohomological(self, c: i32) -> Self {
        (c, self.1)
    }
    fn weight(self) -> i32 {
        self.0 - 2 * self.1
    }
}

/// A complex `⋯ → V^i → V^{next(i)} → ⋯` with `d ∘ d = 0`. Zero components
/// and zero differentials are not stored.
#[derive(Clone, PartialEq)]
pub struct Complex<I: ComplexIndex> {
    dims: BTreeMap<I, usize>,
    diffs: BTreeMap<I, QMatrix>,
}

pub type BigradedComplex = Complex<(i32, i32)>;
pub type UngradedComplex = Complex<i32>;

impl<I: ComplexIndex> Complex<I> {
    pub fn zero() -> Self {
        Complex {
            dims: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// `diffs[i]` maps `V^i → V^{next(i)}` and has shape `dims[next] × dims[i]`.
    pub fn new(dims: BTreeMap<I, usize>, diffs: BTreeMap<I, QMatrix>) -> Result<Self> {
        let dims: BTreeMap<I, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim = |i: &I| dims.get(i).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (i, d) in diffs {
            if d.rows() != dim(&i.next()) || d.cols() != dim(&i) {
                return Err(Error::Invariant(format!("differential at {i:?} has the wrong shape")));
            }
            if !d.is_zero() {
                kept.insert(i, d);
            }
        }
        let c = Complex { dims, diffs: kept };
        for (i, d) in &c.diffs {
            if let Some(d2) = c.diffs.get(&i.next()) {
                if !d2.matmul(d).is_zero() {
                    return Err(Error::Invariant(format!("d∘d ≠ 0 at {i:?}")));
                }
            }
        }
        Ok(c)
    }

    /// With zero differential.
    pub fn from_dims(dims: BTreeMap<I, usize>) -> Self {
        Complex {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
            diffs: BTreeMap::new(),
        }
    }

    /// One copy of `Q` at `i`.
    pub fn simple(i: I) -> Self {
        Self::from_dims([(i, 1)].into())
    }

    pub fn dims(&self) -> &BTreeMap<I, usize> {
        &self.dims
    }

    pub fn dim(&self, i: I) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `d: V^i → V^{next(i)}` (a zero matrix if not stored).
    pub fn differential(&self, i: I) -> QMatrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.dim(i.next()), self.dim(i)))
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diffs.is_empty()
    }

    /// Dimensions of `H^i`, zeros omitted.
    pub fn cohomology_dims(&self) -> BTreeMap<I, usize> {
        self.dims
            .iter()
            .filter_map(|(&i, &n)| {
                let out = self.diffs.get(&i).map_or(0, |d| d.rank());
                let inc = self.diffs.get(&i.prev()).map_or(0, |d| d.rank());
                let h = n - out - inc;
                (h > 0).then_some((i, h))
            })
            .collect()
    }

    /// Smallest and largest cohomological degree with nonzero cohomology.
    pub fn t_amplitude(&self) -> Option<(i32, i32)> {
        let h = self.cohomology_dims();
        let lo = h.keys().map(|i| i.cohomological()).min()?;
        let hi = h.keys().map(|i| i.cohomological()).max()?;
        Some((lo, hi))
    }

    /// Homotopy-equivalent complex with zero differential.
    pub fn minimize(&self) -> Self {
        Self::from_dims(self.cohomology_dims())
    }

    /// [`Self::minimize`] together with chain maps `H → X` and `X → H`
    /// composing to the identity on `H`.
    pub fn minimize_with_maps(&self) -> Minimal<I> {
        let mut incl = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for (&i, &n) in &self.dims {
            let d_out = self.differential(i);
            let d_in = self.differential(i.prev());
            // V = B ⊕ H ⊕ W with B = im d_in and H ⊕ B = ker d_out
            let mut cols: Vec<Vec<Rational>> = Vec::new();
            let extend = |cols: &mut Vec<Vec<Rational>>, v: Vec<Rational>| {
                let mut cand = cols.clone();
                cand.push(v);
                if Matrix::from_columns(n, &cand).rank() == cand.len() {
                    *cols = cand;
                    true
                } else {
                    false
                }
            };
            for j in 0..d_in.cols() {
                extend(&mut cols, d_in.column(j));
            }
            let hb = cols.len();
            let mut reps = Vec::new();
            for v in d_out.kernel_basis() {
                if extend(&mut cols, v.clone()) {
                    reps.push(v);
                }
            }
            if reps.is_empty() {
                continue;
            }
            for e in 0..n {
                let mut unit = vec![q(0); n];
                unit[e] = q(1);
                extend(&mut cols, unit);
            }
            let h = reps.len();
            let inc = Matrix::from_columns(n, &reps);
            let inv = Matrix::from_columns(n, &cols).inverse().expect("basis of V^i");
            let rows: Vec<usize> = (hb..hb + h).collect();
            let all: Vec<usize> = (0..n).collect();
            let pr = inv.select(&rows, &all);
            incl.insert(i, inc);
            proj.insert(i, pr);
        }
        Minimal {
            complex: self.minimize(),
            inclusion: incl,
            projection: proj,
        }
    }

    /// `X[q]`: the component at `c` moves to `c − q`, `d ↦ (−1)^q d`.
    pub fn shift(&self, q_: i32) -> Self {
        let sign = if q_ % 2 == 0 { q(1) } else { q(-1) };
        let mv = |i: I| i.with_cohomological(i.cohomological() - q_);
        Complex {
            dims: self.dims.iter().map(|(&i, &n)| (mv(i), n)).collect(),
            diffs: self.diffs.iter().map(|(&i, d)| (mv(i), d.scale(&sign))).collect(),
        }
    }

    /// Re-index every component; `f` must commute with `next`.
    pub fn reindex<J: ComplexIndex>(&self, f: impl Fn(I) -> J) -> Complex<J> {
        Complex {
            dims: self.dims.iter().map(|(&i, &n)| (f(i), n)).collect(),
            diffs: self.diffs.iter().map(|(&i, d)| (f(i), d.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        for (&i, &n) in &other.dims {
            *dims.entry(i).or_insert(0) += n;
        }
        let keys: Vec<I> = dims.keys().copied().collect();
        let mut diffs = BTreeMap::new();
        for i in keys {
            let a = self.differential(i);
            let b = other.differential(i);
            let mut d = QMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    d[(r, c)] = a[(r, c)].clone();
                }
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    d[(a.rows() + r, a.cols() + c)] = b[(r, c)].clone();
                }
            }
            if !d.is_zero() {
                diffs.insert(i, d);
            }
        }
        Complex { dims, diffs }
    }

    /// Keep the components whose index satisfies `keep`. Only meaningful on
    /// complexes with zero differential, where it is a direct summand.
    pub(crate) fn restrict(&self, keep: impl Fn(I) -> bool) -> Self {
        debug_assert!(self.has_zero_differential());
        Self::from_dims(self.dims.iter().filter(|(&i, _)| keep(i)).map(|(&i, &n)| (i, n)).collect())
    }
}

/// A minimal model with the comparison maps, indexed like the original.
#[derive(Clone, Debug)]
pub struct Minimal<I: ComplexIndex> {
    pub complex: Complex<I>,
    pub inclusion: BTreeMap<I, QMatrix>,
    pub projection: BTreeMap<I, QMatrix>,
}

impl<I: ComplexIndex> Minimal<I> {
    /// Both maps are chain maps and `projection ∘ inclusion = id`.
    pub fn verify(&self, original: &Complex<I>) -> bool {
        for (&i, inc) in &self.inclusion {
            let pr = &self.projection[&i];
            if pr.matmul(inc) != QMatrix::identity(inc.cols()) {
                return false;
            }
            // d ∘ inc = 0 (cocycles) and pr ∘ d_in = 0 (kills boundaries)
            if !original.differential(i).matmul(inc).is_zero() {
                return false;
            }
            if !pr.matmul(&original.differential(i.prev())).is_zero() {
                return false;
            }
        }
        true
    }
}

impl<I: ComplexIndex> Debug for Complex<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex {{ dims: {:?}, differentials at: {:?} }}", self.dims, self.diffs.keys().collect::<Vec<_>>())
    }
}

/// `dim Hom(X, Y[k])` in the homotopy category: chain maps modulo null-homotopic ones.
pub fn hom_homotopy<I: ComplexIndex>(x: &Complex<I>, y: &Complex<I>, k: i32) -> usize {
    let target = |i: I| i.with_cohomological(i.cohomological() + k);
    let sign = if k % 2 == 0 { q(1) } else { q(-1) };

    // unknown blocks f^i: X^i → Y^{i+k}
    let mut offsets = BTreeMap::new();
    let mut nvars = 0;
    for (&i, &n) in x.dims() {
        let m = y.dim(target(i));
        if m > 0 {
            offsets.insert(i, nvars);
            nvars += n * m;
        }
    }
    if nvars == 0 {
        return 0;
    }
    let var = |i: I, r: usize, c: usize| offsets[&i] + r * x.dim(i) + c;

    // chain condition: (−1)^k d_Y f^i − f^{next i} d_X = 0 as maps X^i → Y^{i+k+1}
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let indices: std::collections::BTreeSet<I> = x.dims().keys().flat_map(|&i| [i, i.prev()]).collect();
    for &i in &indices {
        let src = x.dim(i);
        let tgt = y.dim(target(i.next()));
        if src == 0 || tgt == 0 {
            continue;
        }
        let dy = y.differential(target(i));
        let dx = x.differential(i);
        for r in 0..tgt {
            for c in 0..src {
                let mut row = vec![Rational::zero(); nvars];
                if offsets.contains_key(&i) {
                    for m in 0..y.dim(target(i)) {
                        let a = &dy[(r, m)];
                        if !a.is_zero() {
                            row[var(i, m, c)] += &sign * a;
                        }
                    }
                }
                if offsets.contains_key(&i.next()) {
                    for m in 0..x.dim(i.next()) {
                        let a = &dx[(m, c)];
                        if !a.is_zero() {
                            row[var(i.next(), r, m)] -= a;
                        }
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let cycles = if rows.is_empty() {
        nvars
    } else {
        nvars - QMatrix::from_rows(&rows).rank()
    };

    // null-homotopic maps (−1)^k d_Y h + h d_X for h^i: X^i → Y^{i+k−1}
    let mut images: Vec<Vec<Rational>> = Vec::new();
    for (&i, &n) in x.dims() {
        let m = y.dim(target(i.prev()));
        for r in 0..m {
            for c in 0..n {
                let mut f = vec![Rational::zero(); nvars];
                // d_Y h lands in X^i → Y^{i+k}
                if offsets.contains_key(&i) {
                    let dy = y.differential(target(i.prev()));
                    for t in 0..dy.rows() {
                        let a = &dy[(t, r)];
                        if !a.is_zero() {
                            f[var(i, t, c)] += &sign * a;
                        }
                    }
                }
                // h d_X lands in X^{prev i} → Y^{i+k−1}
                let p = i.prev();
                if offsets.contains_key(&p) {
                    let dx = x.differential(p);
                    for s in 0..x.dim(p) {
                        let a = &dx[(c, s)];
                        if !a.is_zero() {
                            f[var(p, r, s)] += a;
                        }
                    }
                }
                if f.iter().any(|v| !v.is_zero()) {
                    images.push(f);
                }
            }
        }
    }
    let boundaries = if images.is_empty() {
        0
    } else {
        QMatrix::from_rows(&images).rank()
    };
    cycles - boundaries
}
