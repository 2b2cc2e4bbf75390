//! Finite-dimensional graded modules over the coinvariant algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::{q, IntLaurent, Integer, QMatrix, Rational};

/// A graded `C`-module given by the action of each variable `x_i`.
///
/// Basis vectors are homogeneous and sorted by degree; `x_i` raises degree by 2.
#[derive(Clone, PartialEq)]
pub struct GradedModule {
    degrees: Vec<i32>,
    actions: Vec<QMatrix>,
}

impl GradedModule {
    /// Validates shapes, degree compatibility and commutativity. The relations
    /// `e_k = 0` are checked separately by [`GradedModule::check_relations`].
    pub fn new(degrees: Vec<i32>, actions: Vec<QMatrix>) -> Result<Self> {
        if actions.is_empty() {
            return Err(Error::Invariant("module needs at least one variable".into()));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invariant("basis degrees must be sorted".into()));
        }
        let d = degrees.len();
        for (k, x) in actions.iter().enumerate() {
            if x.rows() != d || x.cols() != d {
                return Err(Error::Invariant(format!("action of x{} has wrong shape", k + 1)));
            }
            for i in 0..d {
                for j in 0..d {
                    if !x[(i, j)].is_zero() && degrees[i] != degrees[j] + 2 {
                        return Err(Error::Invariant(format!("x{} does not raise degree by 2", k + 1)));
                    }
                }
            }
        }
        for a in 0..actions.len() {
            for b in a + 1..actions.len() {
                if actions[a].matmul(&actions[b]) != actions[b].matmul(&actions[a]) {
                    return Err(Error::Invariant(format!("x{} and x{} do not commute", a + 1, b + 1)));
                }
            }
        }
        Ok(GradedModule { degrees, actions })
    }

    pub(crate) fn from_parts_unchecked(degrees: Vec<i32>, actions: Vec<QMatrix>) -> Self {
        debug_assert!(degrees.windows(2).all(|w| w[0] <= w[1]));
        GradedModule { degrees, actions }
    }

    /// The one-dimensional module `Q = C/C₊` in degree 0.
    pub fn trivial(n: usize) -> Self {
        GradedModule {
            degrees: vec![0],
            actions: vec![QMatrix::zeros(1, 1); n],
        }
    }

    pub fn rank(&self) -> usize {
        self.actions.len()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// Action of `x_i`, 1-based.
    pub fn action(&self, i: usize) -> &QMatrix {
        &self.actions[i - 1]
    }

    pub fn actions(&self) -> &[QMatrix] {
        &self.actions
    }

    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// `Σ_d dim M_d · v^d`.
    pub fn character(&self) -> IntLaurent {
        IntLaurent::from_terms(
            self.graded_dims()
                .into_iter()
                .map(|(d, k)| (d, Integer::from(k))),
        )
    }

    /// Basis indices of each nonzero degree.
    pub fn degree_blocks(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            out.entry(d).or_default().push(i);
        }
        out
    }

    /// `M⟨k⟩` with `M⟨k⟩_d = M_{d+k}`.
    pub fn shift(&self, k: i32) -> Self {
        GradedModule {
            degrees: self.degrees.iter().map(|d| d - k).collect(),
            actions: self.actions.clone(),
        }
    }

    /// Check `e_k(x_1, …, x_n) = 0` for every `k ≥ 1`.
    pub fn check_relations(&self) -> Result<()> {
        let n = self.rank();
        let d = self.dim();
        // e_k by the recurrence over variables: E_j(k) = E_{j-1}(k) + x_j E_{j-1}(k-1)
        let mut e: Vec<QMatrix> = vec![QMatrix::identity(d)];
        e.extend((1..=n).map(|_| QMatrix::zeros(d, d)));
        for x in &self.actions {
            for k in (1..=n).rev() {
                let t = x.matmul(&e[k - 1]);
                e[k] = &e[k] + &t;
            }
        }
        for (k, m) in e.iter().enumerate().skip(1) {
            if !m.is_zero() {
                return Err(Error::Invariant(format!("e_{k} acts nonzero")));
            }
        }
        Ok(())
    }

    /// Matrix of the monomial `x^a`.
    pub fn monomial_action(&self, exps: &[u32]) -> QMatrix {
        let mut out = QMatrix::identity(self.dim());
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                out = self.actions[i].matmul(&out);
            }
        }
        out
    }

    /// Direct sum, degrees merged in sorted order. Returns the module and
    /// the position of each summand's basis vectors.
    pub fn direct_sum(parts: &[&GradedModule]) -> Result<(GradedModule, Vec<Vec<usize>>)> {
        let n = parts.first().map(|m| m.rank()).unwrap_or(0);
        if let Some(m) = parts.iter().find(|m| m.rank() != n) {
            return Err(Error::RankMismatch { expected: n, got: m.rank() });
        }
        let mut tagged: Vec<(i32, usize, usize)> = Vec::new();
        for (p, m) in parts.iter().enumerate() {
            for (i, &d) in m.degrees.iter().enumerate() {
                tagged.push((d, p, i));
            }
        }
        tagged.sort();
        let mut place = parts.iter().map(|m| vec![0; m.dim()]).collect::<Vec<_>>();
        for (pos, &(_, p, i)) in tagged.iter().enumerate() {
            place[p][i] = pos;
        }
        let total = tagged.len();
        let actions = (0..n)
            .map(|k| {
                let mut a = QMatrix::zeros(total, total);
                for (p, m) in parts.iter().enumerate() {
                    for i in 0..m.dim() {
                        for j in 0..m.dim() {
                            let x = &m.actions[k][(i, j)];
                            if !x.is_zero() {
                                a[(place[p][i], place[p][j])] = x.clone();
                            }
                        }
                    }
                }
                a
            })
            .collect();
        let degrees = tagged.iter().map(|t| t.0).collect();
        Ok((GradedModule { degrees, actions }, place))
    }
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedModule(rank {}, character {})", self.rank(), self.character())
    }
}

/// A homogeneous `C`-linear map, stored as one dense matrix
/// (`target.dim() × source.dim()`).
#[derive(Clone, PartialEq)]
pub struct ModuleMap {
    pub degree: i32,
    pub matrix: QMatrix,
}

impl ModuleMap {
    pub fn identity(m: &GradedModule) -> Self {
        ModuleMap {
            degree: 0,
            matrix: QMatrix::identity(m.dim()),
        }
    }

    pub fn zero(source: &GradedModule, target: &GradedModule, degree: i32) -> Self {
        ModuleMap {
            degree,
            matrix: QMatrix::zeros(target.dim(), source.dim()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            degree: self.degree + other.degree,
            matrix: self.matrix.matmul(&other.matrix),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> ModuleMap {
        ModuleMap {
            degree: self.degree,
            matrix: self.matrix.scale(c),
        }
    }

    /// The block `source_d → target_{d+degree}`.
    pub fn block(&self, source: &GradedModule, target: &GradedModule, d: i32) -> QMatrix {
        let rows: Vec<usize> = (0..target.dim())
            .filter(|&i| target.degrees[i] == d + self.degree)
            .collect();
        let cols: Vec<usize> = (0..source.dim())
            .filter(|&j| source.degrees[j] == d)
            .collect();
        self.matrix.select(&rows, &cols)
    }

    /// Homogeneous of the stated degree and commuting with every `x_i`.
    pub fn is_morphism(&self, source: &GradedModule, target: &GradedModule) -> bool {
        if self.matrix.rows() != target.dim() || self.matrix.cols() != source.dim() {
            return false;
        }
        for i in 0..target.dim() {
            for j in 0..source.dim() {
                if !self.matrix[(i, j)].is_zero() && target.degrees[i] != source.degrees[j] + self.degree {
                    return false;
                }
            }
        }
        source
            .actions
            .iter()
            .zip(&target.actions)
            .all(|(xs, xt)| self.matrix.matmul(xs) == xt.matmul(&self.matrix))
    }

    /// If `self = c · id`, return `c`.
    pub fn scalar_value(&self) -> Option<Rational> {
        let m = &self.matrix;
        if m.rows() != m.cols() || self.degree != 0 {
            return None;
        }
        let c = if m.rows() == 0 { q(0) } else { m[(0, 0)].clone() };
        (*m == QMatrix::identity(m.rows()).scale(&c)).then_some(c)
    }
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap(degree {}, {:?})", self.degree, self.matrix)
    }
}
