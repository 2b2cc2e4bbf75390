//! Endomorphism algebras `End(⊕ D_w⟨k⟩)` as explicit graded algebras.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::decompose::Summand;
use super::hom::hom_all;
use super::module::{GradedModule, ModuleMap};
use crate::error::{Error, Result};
use crate::arith::Solver;
use crate::{limits, IntLaurent, Integer, QMatrix, Rational};

/// One basis element of the algebra: a homogeneous map between two objects.
#[derive(Clone, Debug)]
pub struct AlgebraBasisElement {
    pub source: usize,
    pub target: usize,
    pub map: ModuleMap,
}

impl AlgebraBasisElement {
    pub fn degree(&self) -> i32 {
        self.map.degree
    }
}

/// `A = End(⊕_a X_a)` with product `a · b = a ∘ b`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub objects: Vec<Summand>,
    pub modules: Vec<GradedModule>,
    pub basis: Vec<AlgebraBasisElement>,
    /// Basis element `id_{X_a}` for each object.
    pub idempotents: Vec<usize>,
    blocks: BTreeMap<(usize, usize, i32), Vec<usize>>,
    products: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl GradedAlgebra {
    /// Requires `End⁰(X_a) = Q` for each object.
    pub fn build(objects: Vec<Summand>, modules: Vec<GradedModule>) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::Invariant("endomorphism algebra of the zero object".into()));
        }
        let mut basis = Vec::new();
        let mut blocks: BTreeMap<(usize, usize, i32), Vec<usize>> = BTreeMap::new();
        let mut idempotents = vec![usize::MAX; objects.len()];
        for (t, mt) in modules.iter().enumerate() {
            for (s, ms) in modules.iter().enumerate() {
                for (d, maps) in hom_all(ms, mt)? {
                    let maps = if s == t && d == 0 {
                        if maps.len() != 1 {
                            return Err(Error::Invariant(format!(
                                "End⁰ of object {s} has dimension {}",
                                maps.len()
                            )));
                        }
                        idempotents[s] = basis.len();
                        vec![ModuleMap::identity(ms)]
                    } else {
                        maps
                    };
                    for map in maps {
                        blocks.entry((s, t, d)).or_default().push(basis.len());
                        basis.push(AlgebraBasisElement { source: s, target: t, map });
                    }
                }
            }
        }
        limits::check_dim("algebra dimension", basis.len())?;

        let solvers: BTreeMap<(usize, usize, i32), (Solver<Rational>, &Vec<usize>)> = blocks
            .iter()
            .map(|(key, idx)| {
                let cols: Vec<Vec<Rational>> = idx.iter().map(|&b| flatten(&basis[b].map.matrix)).collect();
                let rows = cols[0].len();
                (*key, (Solver::new(&QMatrix::from_columns(rows, &cols)), idx))
            })
            .collect();

        let mut products = BTreeMap::new();
        for (a, ea) in basis.iter().enumerate() {
            for (b, eb) in basis.iter().enumerate() {
                if ea.source != eb.target {
                    continue;
                }
                let c = ea.map.compose(&eb.map);
                let key = (eb.source, ea.target, c.degree);
                let coords = if c.is_zero() {
                    Vec::new()
                } else {
                    let (solver, idx) = solvers.get(&key).ok_or_else(|| {
                        Error::Invariant("composite lands in a zero Hom space".into())
                    })?;
                    let x = solver
                        .solve(&flatten(&c.matrix))
                        .ok_or_else(|| Error::Invariant("composite is not in the Hom span".into()))?;
                    idx.iter()
                        .zip(x)
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(&i, v)| (i, v))
                        .collect()
                };
                products.insert((a, b), coords);
            }
        }

        Ok(GradedAlgebra {
            objects,
            modules,
            basis,
            idempotents,
            blocks,
            products,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for e in &self.basis {
            *out.entry(e.degree()).or_insert(0) += 1;
        }
        out
    }

    /// Basis indices of `Hom(X_source, X_target)` in degree `d`.
    pub fn block(&self, source: usize, target: usize, d: i32) -> &[usize] {
        self.blocks
            .get(&(source, target, d))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `Σ_d dim Hom^d(X_source, X_target) v^d`.
    pub fn block_character(&self, source: usize, target: usize) -> IntLaurent {
        IntLaurent::from_terms(
            self.blocks
                .iter()
                .filter(|((s, t, _), _)| *s == source && *t == target)
                .map(|((_, _, d), idx)| (*d, Integer::from(idx.len()))),
        )
    }

    /// Ungraded Cartan matrix `C[target][source] = dim Hom(X_source, X_target)`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let k = self.objects.len();
        let mut c = vec![vec![0; k]; k];
        for e in &self.basis {
            c[e.target][e.source] += 1;
        }
        c
    }

    /// Coordinates of `basis[a] · basis[b] = basis[a] ∘ basis[b]`; empty when
    /// the product is zero or not composable.
    pub fn mul_basis(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        self.products.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Product of two elements given by coordinate vectors.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (c, k) in self.mul_basis(a, b) {
                    out[*c] += xa * yb * k;
                }
            }
        }
        out
    }

    /// Exhaustive associativity check on composable basis triples.
    pub fn check_associative(&self) -> Result<()> {
        let combine = |terms: Vec<(usize, Rational)>| {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, x) in terms {
                *acc.entry(k).or_insert_with(Rational::zero) += x;
            }
            acc.retain(|_, x| !x.is_zero());
            acc
        };
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                if self.basis[a].source != self.basis[b].target {
                    continue;
                }
                for c in 0..self.dim() {
                    if self.basis[b].source != self.basis[c].target {
                        continue;
                    }
                    let left = combine(
                        self.mul_basis(a, b)
                            .iter()
                            .flat_map(|(k, x)| self.mul_basis(*k, c).iter().map(move |(m, y)| (*m, x * y)))
                            .collect(),
                    );
                    let right = combine(
                        self.mul_basis(b, c)
                            .iter()
                            .flat_map(|(k, x)| self.mul_basis(a, *k).iter().map(move |(m, y)| (*m, x * y)))
                            .collect(),
                    );
                    if left != right {
                        return Err(Error::Invariant(format!("(e{a} e{b}) e{c} ≠ e{a} (e{b} e{c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

fn flatten(m: &QMatrix) -> Vec<Rational> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}
