//! Splitting modules into shifted indecomposables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use super::hom::hom_graded;
use super::module::{GradedModule, ModuleMap};
use crate::error::{Error, Result};
use crate::weyl::Perm;
use crate::{IntLaurent, QMatrix, Rational};

/// `D_w⟨shift⟩`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub w: Perm,
    pub shift: i32,
}

impl Summand {
    pub fn new(w: Perm, shift: i32) -> Self {
        Summand { w, shift }
    }
}

impl fmt::Debug for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w, self.shift)
    }
}

/// `M ≅ ⊕ D_w⟨k⟩` with explicit witnesses: `inclusions[a]: D_w → M` of
/// degree `−k` and `projections[a]: M → D_w` of degree `k`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

impl Decomposition {
    /// Summands with multiplicities.
    pub fn multiplicities(&self) -> BTreeMap<Summand, usize> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            *out.entry(s.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Split idempotents `j_a ∘ p_a` on `M`.
    pub fn idempotents(&self) -> Vec<ModuleMap> {
        self.inclusions
            .iter()
            .zip(&self.projections)
            .map(|(j, p)| j.compose(p))
            .collect()
    }

    /// Check `p_a ∘ j_b = δ_ab`, `Σ j_a ∘ p_a = id` and that every witness is
    /// a module map. `pieces[a]` is the unshifted `D_w` of summand `a`.
    pub fn verify(&self, m: &GradedModule, pieces: &[&GradedModule]) -> Result<()> {
        let bad = |what: String| Err(Error::Invariant(what));
        if pieces.len() != self.summands.len() {
            return bad("one module per summand required".into());
        }
        let total: usize = pieces.iter().map(|d| d.dim()).sum();
        if total != m.dim() {
            return bad(format!("summand dimensions add to {total}, module has {}", m.dim()));
        }
        for (a, d) in pieces.iter().enumerate() {
            if !self.inclusions[a].is_morphism(d, m) || !self.projections[a].is_morphism(m, d) {
                return bad(format!("witness {a} is not a module map"));
            }
            for (b, e) in pieces.iter().enumerate() {
                let c = self.projections[a].compose(&self.inclusions[b]).matrix;
                let expected = if a == b {
                    QMatrix::identity(d.dim())
                } else {
                    QMatrix::zeros(d.dim(), e.dim())
                };
                if c != expected {
                    return bad(format!("p_{a} ∘ j_{b} is not {}", if a == b { "id" } else { "0" }));
                }
            }
        }
        let mut sum = QMatrix::zeros(m.dim(), m.dim());
        for e in self.idempotents() {
            sum = &sum + &e.matrix;
        }
        if sum != QMatrix::identity(m.dim()) {
            return bad("idempotents do not sum to the identity".into());
        }
        Ok(())
    }
}

/// Expected summands read off a KL expansion: a coefficient `c v^j` of `b_x`
/// gives `c` copies of `D_x⟨−j⟩`.
pub fn summands_from_kl(coords: &BTreeMap<Perm, IntLaurent>) -> Result<Vec<Summand>> {
    let mut out = Vec::new();
    for (x, p) in coords {
        for (j, c) in p.terms() {
            if c.is_negative() {
                return Err(Error::Invariant(format!("negative multiplicity {c} for b_{x} v^{j}")));
            }
            let c = c.to_usize().ok_or_else(|| Error::Invariant("multiplicity overflow".into()))?;
            out.extend(std::iter::repeat_n(Summand::new(x.clone(), -j), c));
        }
    }
    Ok(out)
}

/// A complement being peeled, with maps to and from the original module.
pub(crate) struct Remainder {
    pub module: GradedModule,
    incl: QMatrix,
    proj: QMatrix,
}

impl Remainder {
    pub fn new(m: &GradedModule) -> Self {
        Remainder {
            module: m.clone(),
            incl: QMatrix::identity(m.dim()),
            proj: QMatrix::identity(m.dim()),
        }
    }

    /// Look for a split pair `p: K → D` of degree `k`, `j: D → K` of degree
    /// `−k` with `p ∘ j = id`. Relies on `End⁰(D) = Q`: a nonzero composite
    /// is then a nonzero scalar.
    pub fn find_split(&self, d: &GradedModule, w: &Perm, k: i32) -> Result<Option<(ModuleMap, ModuleMap)>> {
        let ps = hom_graded(&self.module, d, k)?;
        if ps.is_empty() {
            return Ok(None);
        }
        let js = hom_graded(d, &self.module, -k)?;
        for p in &ps {
            for j in &js {
                let c = p.compose(j);
                if c.is_zero() {
                    continue;
                }
                let beta = c.scalar_value().ok_or_else(|| Error::NoSplitting {
                    w: w.clone(),
                    shift: k,
                    reason: "degree-0 endomorphism is not a scalar".into(),
                })?;
                return Ok(Some((p.scale(&(Rational::from_integer(1.into()) / beta)), j.clone())));
            }
        }
        Ok(None)
    }

    /// Split off the image of `j`; returns the witnesses on the original module.
    pub fn peel(&mut self, p: &ModuleMap, j: &ModuleMap) -> Result<(ModuleMap, ModuleMap)> {
        let global_j = ModuleMap {
            degree: j.degree,
            matrix: self.incl.matmul(&j.matrix),
        };
        let global_p = ModuleMap {
            degree: p.degree,
            matrix: p.matrix.matmul(&self.proj),
        };

        let k = &self.module;
        let e = j.matrix.matmul(&p.matrix);
        let (stable, _) = fitting_power(&e);
        let complement_proj = &QMatrix::identity(k.dim()) - &e;

        // ker of the stabilized power, computed degree by degree
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        let mut coordinate_rows: Vec<usize> = Vec::new();
        let mut degrees = Vec::new();
        for (deg, idx) in k.degree_blocks() {
            let block = stable.select(&idx, &idx);
            let r = block.rref();
            let free: Vec<usize> = (0..idx.len()).filter(|c| !r.pivots.contains(c)).collect();
            for (v, &f) in block.kernel_basis().iter().zip(&free) {
                let mut full = vec![Rational::zero(); k.dim()];
                for (a, &i) in idx.iter().enumerate() {
                    full[i] = v[a].clone();
                }
                basis.push(full);
                coordinate_rows.push(idx[f]);
                degrees.push(deg);
            }
        }
        let r = basis.len();
        if r + j.matrix.cols() != k.dim() {
            return Err(Error::Invariant("complement has the wrong dimension".into()));
        }
        let iota = QMatrix::from_columns(k.dim(), &basis);
        let pi = complement_proj.select(&coordinate_rows, &(0..k.dim()).collect::<Vec<_>>());
        let actions = k
            .actions()
            .iter()
            .map(|x| pi.matmul(&x.matmul(&iota)))
            .collect();
        self.incl = self.incl.matmul(&iota);
        self.proj = pi.matmul(&self.proj);
        self.module = GradedModule::from_parts_unchecked(degrees, actions);
        Ok((global_p, global_j))
    }
}

/// `e^N` for `N` past which the rank no longer drops, and that `N`.
fn fitting_power(e: &QMatrix) -> (QMatrix, usize) {
    let mut power = e.clone();
    let mut rank = power.rank();
    let mut steps = 1;
    loop {
        let next = power.matmul(e);
        let r = next.rank();
        if r == rank {
            return (power, steps);
        }
        power = next;
        rank = r;
        steps += 1;
    }
}
