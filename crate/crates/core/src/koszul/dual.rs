//! The graded algebra `A = End(⊕_w D_w)`, its simple modules, and Ext
//! between them via minimal graded projective resolutions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{SparseEchelon, SparseRow};
use crate::error::{Error, Result};
use crate::soergel::{GradedAlgebra, SoergelCategory};
use crate::weyl::Perm;
use crate::{IntLaurent, Integer, QMatrix, Rational};

/// Positions and basis of the indecomposable projectives `P_x = A e_x`.
pub struct DualAlgebra {
    algebra: GradedAlgebra,
    elements: Vec<Perm>,
    /// Basis elements with source `x`, in basis order.
    by_source: Vec<Vec<usize>>,
    /// Position of each basis element inside `by_source[source]`.
    slot: Vec<usize>,
}

/// Graded projective `⊕_i P_{x_i}⟨d_i⟩`; the generator of summand `i` sits
/// in degree `d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projective {
    pub generators: Vec<(usize, i32)>,
}

/// A minimal graded projective resolution of a simple module `L_x`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub simple: usize,
    pub terms: Vec<Projective>,
    /// `true` when the last kernel was zero; `false` if the length cap hit.
    pub complete: bool,
}

impl Resolution {
    /// `Ext^k(L_x, L_y)` as `Σ_d dim Ext^k(L_x, L_y⟨d⟩) v^d`.
    pub fn ext(&self, y: usize, k: usize) -> IntLaurent {
        match self.terms.get(k) {
            None => IntLaurent::zero(),
            Some(p) => IntLaurent::from_terms(
                p.generators
                    .iter()
                    .filter(|(z, _)| *z == y)
                    .map(|&(_, d)| (d, Integer::one())),
            ),
        }
    }
}

/// Outcome of the numerical Koszulity test.
#[derive(Clone, Debug)]
pub struct KoszulityReport {
    pub rank: usize,
    /// Degree of the generators of the radical.
    pub step: i32,
    pub max_k: usize,
    /// `(x, y, k, degree)` for every Ext piece outside degree `k·step`.
    pub violations: Vec<(Perm, Perm, usize, i32)>,
    pub complete: bool,
}

impl KoszulityReport {
    pub fn koszul(&self) -> bool {
        self.complete && self.violations.is_empty()
    }
}

type Vector = SparseRow<Rational>;

impl DualAlgebra {
    pub fn new(cat: &SoergelCategory) -> Result<Self> {
        let algebra = cat.full_endo_algebra()?;
        // the radical is A₊ only if A₀ is spanned by the idempotents
        for (b, e) in algebra.basis.iter().enumerate() {
            if e.degree() < 0 || (e.degree() == 0 && !algebra.idempotents.contains(&b)) {
                return Err(Error::Invariant(format!("A₀ is not semisimple: basis element {b} has degree {}", e.degree())));
            }
        }
        let elements = algebra.objects.iter().map(|s| s.w.clone()).collect();
        let mut by_source = vec![Vec::new(); algebra.objects.len()];
        let mut slot = vec![0; algebra.dim()];
        for (b, e) in algebra.basis.iter().enumerate() {
            slot[b] = by_source[e.source].len();
            by_source[e.source].push(b);
        }
        Ok(DualAlgebra { algebra, elements, by_source, slot })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, w: &Perm) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == w)
            .ok_or_else(|| Error::Invariant(format!("{w} is not an element of the group")))
    }

    /// `C[x][y] = dim e_y A e_x = dim Hom(D_x, D_y)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let c = self.algebra.cartan();
        let k = c.len();
        (0..k).map(|x| (0..k).map(|y| c[y][x]).collect()).collect()
    }

    /// Graded Cartan matrix `C[x][y] = Σ_d dim Hom^d(D_x, D_y) v^d`.
    pub fn graded_cartan(&self) -> Vec<Vec<IntLaurent>> {
        let k = self.elements.len();
        (0..k)
            .map(|x| (0..k).map(|y| self.algebra.block_character(x, y)).collect())
            .collect()
    }

    /// Smallest positive degree of `A`.
    pub fn radical_step(&self) -> i32 {
        self.algebra.basis.iter().map(|e| e.degree()).filter(|&d| d > 0).min().unwrap_or(1)
    }

    fn degree(&self, b: usize) -> i32 {
        self.algebra.basis[b].degree()
    }

    fn target(&self, b: usize) -> usize {
        self.algebra.basis[b].target
    }

    /// Coordinates of `P = ⊕ P_{x_i}⟨d_i⟩`: summand offsets.
    fn offsets(&self, p: &Projective) -> Vec<usize> {
        let mut acc = 0;
        p.generators
            .iter()
            .map(|&(x, _)| {
                let o = acc;
                acc += self.by_source[x].len();
                o
            })
            .collect()
    }

    /// `(summand, basis element)` of a coordinate.
    fn locate(&self, p: &Projective, offsets: &[usize], col: usize) -> (usize, usize) {
        let i = offsets.partition_point(|&o| o <= col) - 1;
        (i, self.by_source[p.generators[i].0][col - offsets[i]])
    }

    /// `a · v` for `v ∈ P`.
    fn act(&self, a: usize, p: &Projective, offsets: &[usize], v: &Vector) -> Vector {
        let mut out: Vector = Vec::new();
        for (col, x) in v {
            let (i, b) = self.locate(p, offsets, *col);
            for (c, k) in self.algebra.mul_basis(a, b) {
                out.push((offsets[i] + self.slot[*c], x * k));
            }
        }
        canonical(out)
    }

    /// Minimal graded projective resolution of `L_x`, at most `max_len + 1`
    /// terms.
    pub fn resolution(&self, x: usize, max_len: usize) -> Result<Resolution> {
        let mut terms = vec![Projective { generators: vec![(x, 0)] }];
        // radical of P_x: homogeneous, pure-target basis vectors
        let mut kernel: Vec<(usize, i32, Vector)> = self.by_source[x]
            .iter()
            .enumerate()
            .filter(|&(_, &b)| self.degree(b) > 0)
            .map(|(j, &b)| (self.target(b), self.degree(b), vec![(j, Rational::one())]))
            .collect();
        while !kernel.is_empty() {
            if terms.len() > max_len {
                return Ok(Resolution { simple: x, terms, complete: false });
            }
            let p = terms.last().expect("nonempty");
            let offsets = self.offsets(p);
            let total: usize = p.generators.iter().map(|&(y, _)| self.by_source[y].len()).sum();
            crate::limits::check_dim("resolution term", total)?;

            // generators: complement of A₊K inside K, block by block
            let mut blocks: BTreeMap<(usize, i32), Vec<Vector>> = BTreeMap::new();
            for (y, d, v) in &kernel {
                blocks.entry((*y, *d)).or_default().push(v.clone());
            }
            let mut radical: BTreeMap<(usize, i32), SparseEchelon<Rational>> = BTreeMap::new();
            for (y, d, v) in &kernel {
                for &a in &self.by_source[*y] {
                    let da = self.degree(a);
                    if da <= 0 {
                        continue;
                    }
                    let av = self.act(a, p, &offsets, v);
                    if !av.is_empty() {
                        radical
                            .entry((self.target(a), d + da))
                            .or_insert_with(|| SparseEchelon::new(total))
                            .insert(av);
                    }
                }
            }
            let mut gens: Vec<(usize, i32, Vector)> = Vec::new();
            for ((y, d), vs) in blocks {
                let mut span = radical.remove(&(y, d)).unwrap_or_else(|| SparseEchelon::new(total));
                for v in vs {
                    if span.insert(v.clone()) {
                        gens.push((y, d, v));
                    }
                }
            }
            let next = Projective { generators: gens.iter().map(|(y, d, _)| (*y, *d)).collect() };
            kernel = self.kernel_of(p, &offsets, &next, &gens);
            terms.push(next);
        }
        Ok(Resolution { simple: x, terms, complete: true })
    }

    /// Kernel of `P' → P`, `(j, b) ↦ b · g_j`, block by block.
    fn kernel_of(
        &self,
        p: &Projective,
        p_offsets: &[usize],
        next: &Projective,
        gens: &[(usize, i32, Vector)],
    ) -> Vec<(usize, i32, Vector)> {
        let offsets = self.offsets(next);
        let mut columns: BTreeMap<(usize, i32), Vec<(usize, Vector)>> = BTreeMap::new();
        for (j, (y, d, g)) in gens.iter().enumerate() {
            for &b in &self.by_source[*y] {
                columns
                    .entry((self.target(b), d + self.degree(b)))
                    .or_default()
                    .push((offsets[j] + self.slot[b], self.act(b, p, p_offsets, g)));
            }
        }
        let mut out = Vec::new();
        for ((y, d), cols) in columns {
            let mut rows: BTreeMap<usize, Vector> = BTreeMap::new();
            for (c, (_, img)) in cols.iter().enumerate() {
                for (r, x) in img {
                    rows.entry(*r).or_default().push((c, x.clone()));
                }
            }
            let mut sys = SparseEchelon::new(cols.len());
            for row in rows.into_values() {
                sys.insert(row);
            }
            for k in sys.kernel_basis() {
                let v: Vector = k
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(c, x)| (cols[c].0, x))
                    .collect();
                out.push((y, d, v));
            }
        }
        out
    }

    /// Resolutions of every simple module.
    pub fn resolutions(&self, max_len: usize) -> Result<Vec<Resolution>> {
        (0..self.elements.len()).map(|x| self.resolution(x, max_len)).collect()
    }

    /// Length cap above the global dimension `2ℓ(w₀)`.
    pub fn default_max_len(&self) -> usize {
        let n = self.elements.first().map_or(1, Perm::rank);
        n * n + 2
    }

    /// `Ext^k(L_x, L_y)` graded by internal degree.
    pub fn ext_dims(&self, x: &Perm, y: &Perm, k: usize) -> Result<IntLaurent> {
        let (xi, yi) = (self.index_of(x)?, self.index_of(y)?);
        Ok(self.resolution(xi, k.max(1))?.ext(yi, k))
    }

    /// `χ[x][y] = Σ_k (−1)^k dim Ext^k(L_x, L_y)`.
    pub fn euler_matrix(&self, resolutions: &[Resolution]) -> Vec<Vec<Integer>> {
        let k = self.elements.len();
        resolutions
            .iter()
            .map(|r| {
                let mut row = vec![Integer::zero(); k];
                for (i, p) in r.terms.iter().enumerate() {
                    for (y, _) in &p.generators {
                        if i % 2 == 0 {
                            row[*y] += 1;
                        } else {
                            row[*y] -= 1;
                        }
                    }
                }
                row
            })
            .collect()
    }

    /// Inverse of the ungraded Cartan matrix, if it is invertible.
    pub fn inverse_cartan(&self) -> Option<QMatrix> {
        let c = self.cartan_matrix();
        let rows: Vec<Vec<Rational>> = c
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(Integer::from(x))).collect())
            .collect();
        QMatrix::from_rows(&rows).inverse()
    }

    /// Every nonzero `Ext^k(L_x, L_y)` sits in the single degree `k·step`.
    pub fn koszulity(&self, resolutions: &[Resolution]) -> KoszulityReport {
        let step = self.radical_step();
        let mut violations = Vec::new();
        let mut max_k = 0;
        for r in resolutions {
            max_k = max_k.max(r.terms.len().saturating_sub(1));
            for (k, p) in r.terms.iter().enumerate() {
                for &(y, d) in &p.generators {
                    if d != k as i32 * step {
                        violations.push((self.elements[r.simple].clone(), self.elements[y].clone(), k, d));
                    }
                }
            }
        }
        violations.sort();
        violations.dedup();
        KoszulityReport {
            rank: self.elements.first().map_or(1, Perm::rank),
            step,
            max_k,
            violations,
            complete: resolutions.iter().all(|r| r.complete),
        }
    }
}

/// Graded Ext purity test for `S_n`.
pub fn koszulity_check(n: usize) -> Result<KoszulityReport> {
    let dual = DualAlgebra::new(&SoergelCategory::new(n)?)?;
    let res = dual.resolutions(dual.default_max_len())?;
    Ok(dual.koszulity(&res))
}

fn canonical(v: Vector) -> Vector {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, x) in v {
        *acc.entry(c).or_insert_with(Rational::zero) += x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}
