//! Complexes over the additive categories of twisted Soergel-module
//! generators, and the functors between the four sides.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::arith::Solver;
use crate::error::{Error, Result};
use crate::soergel::{hom_all, hom_graded, SoergelCategory};
use crate::weyl::Perm;
use crate::{QMatrix, Rational};

/// Which corner of the square a complex lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Mixed side, generators `E_w(n)[2n]`.
    Mix,
    /// K-motivic side, untwisted generators `E_w`.
    K,
    /// Graded perverse side, projectives `P_w(n)`.
    PervGr,
    /// Ungraded perverse side, projectives `P_w`.
    Perv,
}

impl Side {
    pub fn is_graded(self) -> bool {
        matches!(self, Side::Mix | Side::PervGr)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Mix => "MIX",
            Side::K => "K",
            Side::PervGr => "PERV_GR",
            Side::Perv => "PERV",
        })
    }
}

/// A generator `w` with twist label `n` (graded sides only).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub w: Perm,
    pub twist: Option<i32>,
}

impl Generator {
    pub fn graded(w: Perm, n: i32) -> Self {
        Generator { w, twist: Some(n) }
    }

    pub fn ungraded(w: Perm) -> Self {
        Generator { w, twist: None }
    }

    fn check(&self, side: Side) -> Result<()> {
        if side.is_graded() != self.twist.is_some() {
            return Err(Error::SideMismatch(format!("generator {self:?} on side {side}")));
        }
        Ok(())
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            Some(n) => write!(f, "({}, {n})", self.w),
            None => write!(f, "({})", self.w),
        }
    }
}

/// A space of allowed matrix entries with a fixed basis.
pub struct HomSpace {
    pub basis: Vec<QMatrix>,
    rows: usize,
    cols: usize,
    solver: Option<Solver<Rational>>,
}

impl HomSpace {
    fn new(basis: Vec<QMatrix>, rows: usize, cols: usize) -> Self {
        let solver = (!basis.is_empty()).then(|| {
            let columns: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
            Solver::new(&QMatrix::from_columns(rows * cols, &columns))
        });
        HomSpace { basis, rows, cols, solver }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `m` in the basis, if it lies in the span.
    pub fn coords(&self, m: &QMatrix) -> Option<Vec<Rational>> {
        if m.rows() != self.rows || m.cols() != self.cols {
            return None;
        }
        match &self.solver {
            None => m.is_zero().then(Vec::new),
            Some(s) => s.solve(&flatten(m)),
        }
    }

    pub fn combination(&self, coeffs: &[Rational]) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for (b, c) in self.basis.iter().zip(coeffs) {
            out = &out + &b.scale(c);
        }
        out
    }
}

impl fmt::Debug for HomSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomSpace(dim {}, {}×{})", self.dim(), self.rows, self.cols)
    }
}

pub(crate) fn flatten(m: &QMatrix) -> Vec<Rational> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Soergel modules plus cached Hom spaces, shared by every side.
pub struct FormalCategory {
    soergel: Arc<SoergelCategory>,
    graded: RwLock<HashMap<(Perm, Perm, i32), Arc<HomSpace>>>,
    ungraded: RwLock<HashMap<(Perm, Perm), Arc<HomSpace>>>,
}

impl FormalCategory {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self::from_soergel(Arc::new(SoergelCategory::new(n)?)))
    }

    pub fn from_soergel(soergel: Arc<SoergelCategory>) -> Self {
        FormalCategory {
            soergel,
            graded: RwLock::new(HashMap::new()),
            ungraded: RwLock::new(HashMap::new()),
        }
    }

    pub fn soergel(&self) -> &SoergelCategory {
        &self.soergel
    }

    pub fn rank(&self) -> usize {
        self.soergel.rank()
    }

    /// `dim D_w`.
    pub fn module_dim(&self, w: &Perm) -> Result<usize> {
        Ok(self.soergel.indecomposable(w)?.dim())
    }

    /// `Hom(D_x, D_y)` in centered degree `d`.
    pub fn graded_hom(&self, x: &Perm, y: &Perm, d: i32) -> Result<Arc<HomSpace>> {
        let key = (x.clone(), y.clone(), d);
        if let Some(h) = self.graded.read().expect("cache poisoned").get(&key) {
            return Ok(h.clone());
        }
        let (dx, dy) = (self.soergel.indecomposable(x)?, self.soergel.indecomposable(y)?);
        let basis = hom_graded(&dx, &dy, d)?.into_iter().map(|f| f.matrix).collect();
        let space = Arc::new(HomSpace::new(basis, dy.dim(), dx.dim()));
        Ok(self.graded.write().expect("cache poisoned").entry(key).or_insert(space).clone())
    }

    /// All of `Hom(D_x, D_y)`, as the sum of its graded pieces.
    pub fn ungraded_hom(&self, x: &Perm, y: &Perm) -> Result<Arc<HomSpace>> {
        let key = (x.clone(), y.clone());
        if let Some(h) = self.ungraded.read().expect("cache poisoned").get(&key) {
            return Ok(h.clone());
        }
        let (dx, dy) = (self.soergel.indecomposable(x)?, self.soergel.indecomposable(y)?);
        let basis = hom_all(&dx, &dy)?
            .into_values()
            .flatten()
            .map(|f| f.matrix)
            .collect();
        let space = Arc::new(HomSpace::new(basis, dy.dim(), dx.dim()));
        Ok(self.ungraded.write().expect("cache poisoned").entry(key).or_insert(space).clone())
    }

    /// Allowed entries for a matrix coefficient `a → b` on `side`.
    ///
    /// Graded sides read `Hom(D_x, D_y)` in degree `2(n − m)` for the
    /// normalization where `D_w` starts in degree 0; in centered degrees
    /// that is `2(n − m) + ℓ(x) − ℓ(y)`. Ungraded sides take all of it.
    pub fn hom_rule(&self, side: Side, a: &Generator, b: &Generator) -> Result<Arc<HomSpace>> {
        a.check(side)?;
        b.check(side)?;
        match (a.twist, b.twist) {
            (Some(m), Some(n)) => {
                let d = 2 * (n - m) + a.w.length() as i32 - b.w.length() as i32;
                self.graded_hom(&a.w, &b.w, d)
            }
            _ => self.ungraded_hom(&a.w, &b.w),
        }
    }

    /// Zero matrix between two lists of generators.
    pub fn zero_matrix(&self, targets: &[Generator], sources: &[Generator]) -> Result<FormalMatrix> {
        let rows = targets.iter().map(|t| self.module_dim(&t.w)).collect::<Result<Vec<_>>>()?;
        let cols = sources.iter().map(|s| self.module_dim(&s.w)).collect::<Result<Vec<_>>>()?;
        Ok(FormalMatrix {
            targets: targets.to_vec(),
            sources: sources.to_vec(),
            entries: rows
                .iter()
                .map(|&r| cols.iter().map(|&c| QMatrix::zeros(r, c)).collect())
                .collect(),
        })
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: &FormalMatrix, b: &FormalMatrix) -> Result<FormalMatrix> {
        if a.sources != b.targets {
            return Err(Error::Invariant("composing matrices over different objects".into()));
        }
        let mut out = self.zero_matrix(&a.targets, &b.sources)?;
        for t in 0..a.targets.len() {
            for s in 0..b.sources.len() {
                for m in 0..a.sources.len() {
                    let x = &a.entries[t][m];
                    let y = &b.entries[m][s];
                    if !x.is_zero() && !y.is_zero() {
                        out.entries[t][s] = &out.entries[t][s] + &x.matmul(y);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Validate generators, entries and `d ∘ d = 0`.
    pub fn complex(
        &self,
        side: Side,
        terms: BTreeMap<i32, Vec<Generator>>,
        diffs: BTreeMap<i32, FormalMatrix>,
    ) -> Result<FormalComplex> {
        let terms: BTreeMap<i32, Vec<Generator>> = terms.into_iter().filter(|(_, g)| !g.is_empty()).collect();
        for g in terms.values().flatten() {
            g.check(side)?;
            if g.w.rank() != self.rank() {
                return Err(Error::RankMismatch { expected: self.rank(), got: g.w.rank() });
            }
        }
        let empty = Vec::new();
        let mut kept = BTreeMap::new();
        for (c, d) in diffs {
            let src = terms.get(&c).unwrap_or(&empty);
            let tgt = terms.get(&(c + 1)).unwrap_or(&empty);
            if d.sources != *src || d.targets != *tgt {
                return Err(Error::Invariant(format!("differential at {c} does not match the terms")));
            }
            for (t, row) in d.entries.iter().enumerate() {
                for (s, e) in row.iter().enumerate() {
                    if self.hom_rule(side, &src[s], &tgt[t])?.coords(e).is_none() {
                        return Err(Error::Invariant(format!(
                            "entry {:?} → {:?} at {c} is outside the allowed Hom space",
                            src[s], tgt[t]
                        )));
                    }
                }
            }
            if !d.is_zero() {
                kept.insert(c, d);
            }
        }
        let x = FormalComplex { side, terms, diffs: kept };
        if !self.dsquare_check(&x)? {
            return Err(Error::Invariant("d∘d ≠ 0".into()));
        }
        Ok(x)
    }

    /// `d ∘ d = 0`, exactly.
    pub fn dsquare_check(&self, x: &FormalComplex) -> Result<bool> {
        for (c, d) in &x.diffs {
            if let Some(d2) = x.diffs.get(&(c + 1)) {
                if !self.compose(d2, d)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The differential at `c`, zero if not stored.
    pub fn differential(&self, x: &FormalComplex, c: i32) -> Result<FormalMatrix> {
        match x.diffs.get(&c) {
            Some(d) => Ok(d.clone()),
            None => self.zero_matrix(x.term(c + 1), x.term(c)),
        }
    }
}

/// Matrix of Hom-space elements; `entries[t][s]: D_{sources[s]} → D_{targets[t]}`.
#[derive(Clone, PartialEq)]
pub struct FormalMatrix {
    pub targets: Vec<Generator>,
    pub sources: Vec<Generator>,
    pub entries: Vec<Vec<QMatrix>>,
}

impl FormalMatrix {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    fn relabel(&self, f: &impl Fn(&Generator) -> Generator) -> FormalMatrix {
        FormalMatrix {
            targets: self.targets.iter().map(f).collect(),
            sources: self.sources.iter().map(f).collect(),
            entries: self.entries.clone(),
        }
    }
}

impl fmt::Debug for FormalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalMatrix({:?} → {:?})", self.sources, self.targets)
    }
}

/// A bounded complex of formal sums of generators.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalComplex {
    side: Side,
    terms: BTreeMap<i32, Vec<Generator>>,
    diffs: BTreeMap<i32, FormalMatrix>,
}

impl FormalComplex {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> &BTreeMap<i32, Vec<Generator>> {
        &self.terms
    }

    pub fn term(&self, c: i32) -> &[Generator] {
        self.terms.get(&c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn stored_differentials(&self) -> &BTreeMap<i32, FormalMatrix> {
        &self.diffs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }

    fn relabel(&self, side: Side, f: impl Fn(&Generator) -> Generator) -> FormalComplex {
        FormalComplex {
            side,
            terms: self
                .terms
                .iter()
                .map(|(&c, g)| (c, g.iter().map(&f).collect()))
                .collect(),
            diffs: self.diffs.iter().map(|(&c, d)| (c, d.relabel(&f))).collect(),
        }
    }

    fn expect_side(&self, side: Side) -> Result<()> {
        if self.side != side {
            return Err(Error::SideMismatch(format!("expected a {side} complex, got {}", self.side)));
        }
        Ok(())
    }

    /// `X(n)[2n]` on the mixed side, `X(n)` on the graded perverse side:
    /// every twist label moves by `n`, positions stay.
    pub fn twist(&self, n: i32) -> Result<FormalComplex> {
        if !self.side.is_graded() {
            return Err(Error::SideMismatch(format!("no twist on side {}", self.side)));
        }
        Ok(self.relabel(self.side, |g| Generator::graded(g.w.clone(), g.twist.unwrap_or(0) + n)))
    }

    /// `X[k]`: term at `c` moves to `c − k`, differential times `(−1)^k`.
    pub fn shift(&self, k: i32) -> FormalComplex {
        let sign = if k % 2 == 0 { crate::q(1) } else { crate::q(-1) };
        FormalComplex {
            side: self.side,
            terms: self.terms.iter().map(|(&c, g)| (c - k, g.clone())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&c, d)| {
                    let mut d = d.clone();
                    for e in d.entries.iter_mut().flatten() {
                        *e = e.scale(&sign);
                    }
                    (c - k, d)
                })
                .collect(),
        }
    }
}

/// Graded Koszul duality: same data, read on the graded perverse side.
pub fn gkos(x: &FormalComplex) -> Result<FormalComplex> {
    x.expect_side(Side::Mix)?;
    Ok(x.relabel(Side::PervGr, Generator::clone))
}

/// ι: forget twist labels; each entry now lives in the full Hom space.
pub fn iota_formal(x: &FormalComplex) -> Result<FormalComplex> {
    x.expect_side(Side::Mix)?;
    Ok(x.relabel(Side::K, |g| Generator::ungraded(g.w.clone())))
}

/// v: forget the grading on the perverse side.
pub fn v_formal(x: &FormalComplex) -> Result<FormalComplex> {
    x.expect_side(Side::PervGr)?;
    Ok(x.relabel(Side::Perv, |g| Generator::ungraded(g.w.clone())))
}

/// Ungraded Koszul duality: same data, read on the perverse side.
pub fn kos_formal(x: &FormalComplex) -> Result<FormalComplex> {
    x.expect_side(Side::K)?;
    Ok(x.relabel(Side::Perv, Generator::clone))
}

/// `Kos ∘ ι = v ∘ gKos` on `x`, as labeled complexes.
pub fn square_check(x: &FormalComplex) -> Result<bool> {
    Ok(kos_formal(&iota_formal(x)?)? == v_formal(&gkos(x)?)?)
}
