//! Hom spaces between graded modules by solving the commutation equations.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::module::{GradedModule, ModuleMap};
use crate::arith::{SparseEchelon, SparseRow};
use crate::error::{Error, Result};
use crate::{limits, IntLaurent, Integer, QMatrix, Rational};

/// Basis of `Hom(M, N)` in degree `d`.
pub fn hom_graded(m: &GradedModule, n: &GradedModule, d: i32) -> Result<Vec<ModuleMap>> {
    let unknowns: Vec<(usize, usize)> = (0..n.dim())
        .flat_map(|j| (0..m.dim()).map(move |i| (j, i)))
        .filter(|&(j, i)| n.degrees()[j] == m.degrees()[i] + d)
        .collect();
    solve_commuting(m, n, d, unknowns)
}

/// Basis of the full (ungraded) `Hom(M, N)`: every matrix entry is unknown.
/// The returned maps are not homogeneous in general; their `degree` is 0.
pub fn hom_ungraded(m: &GradedModule, n: &GradedModule) -> Result<Vec<ModuleMap>> {
    let unknowns: Vec<(usize, usize)> = (0..n.dim())
        .flat_map(|j| (0..m.dim()).map(move |i| (j, i)))
        .collect();
    solve_commuting(m, n, 0, unknowns)
}

/// Degrees in which `Hom(M, N)` can be nonzero.
pub fn degree_range(m: &GradedModule, n: &GradedModule) -> std::ops::RangeInclusive<i32> {
    match (m.degrees().first(), m.degrees().last(), n.degrees().first(), n.degrees().last()) {
        (Some(&mlo), Some(&mhi), Some(&nlo), Some(&nhi)) => (nlo - mhi)..=(nhi - mlo),
        #[allow(clippy::reversed_empty_ranges)]
        _ => 1..=0,
    }
}

/// `Σ_d dim Hom^d(M, N) v^d`.
pub fn hom_dimensions(m: &GradedModule, n: &GradedModule) -> Result<IntLaurent> {
    let mut out = IntLaurent::zero();
    for d in degree_range(m, n) {
        let k = hom_graded(m, n, d)?.len();
        out.add_term(d, Integer::from(k));
    }
    Ok(out)
}

/// All homogeneous Hom bases, keyed by degree (zero spaces omitted).
pub fn hom_all(m: &GradedModule, n: &GradedModule) -> Result<BTreeMap<i32, Vec<ModuleMap>>> {
    let mut out = BTreeMap::new();
    for d in degree_range(m, n) {
        let b = hom_graded(m, n, d)?;
        if !b.is_empty() {
            out.insert(d, b);
        }
    }
    Ok(out)
}

fn solve_commuting(
    m: &GradedModule,
    n: &GradedModule,
    degree: i32,
    unknowns: Vec<(usize, usize)>,
) -> Result<Vec<ModuleMap>> {
    if m.rank() != n.rank() {
        return Err(Error::RankMismatch { expected: m.rank(), got: n.rank() });
    }
    limits::check_dim("Hom system", unknowns.len())?;
    let var: BTreeMap<(usize, usize), usize> =
        unknowns.iter().enumerate().map(|(k, &ji)| (ji, k)).collect();
    let mut system = SparseEchelon::<Rational>::new(unknowns.len());
    // when x_1 + … + x_n acts by zero on both sides, x_n is redundant
    let gens = if m.rank() > 1 && sum_vanishes(m) && sum_vanishes(n) {
        m.rank() - 1
    } else {
        m.rank()
    };
    for k in 0..gens {
        let xm = &m.actions()[k];
        let xn = &n.actions()[k];
        let xm_cols = nonzero_by_col(xm);
        let xn_rows = nonzero_by_row(xn);
        // (f x^M − x^N f)[j, i'] = 0
        for j in 0..n.dim() {
            for ip in 0..m.dim() {
                let mut row: SparseRow<Rational> = Vec::new();
                for (i, a) in &xm_cols[ip] {
                    if let Some(&v) = var.get(&(j, *i)) {
                        row.push((v, a.clone()));
                    }
                }
                for (jp, b) in &xn_rows[j] {
                    if let Some(&v) = var.get(&(*jp, ip)) {
                        row.push((v, -b.clone()));
                    }
                }
                if !row.is_empty() {
                    system.insert(row);
                }
            }
        }
    }
    Ok(system
        .kernel_basis()
        .into_iter()
        .map(|sol| {
            let mut matrix = QMatrix::zeros(n.dim(), m.dim());
            for (k, x) in sol.into_iter().enumerate() {
                if !x.is_zero() {
                    let (j, i) = unknowns[k];
                    matrix[(j, i)] = x;
                }
            }
            ModuleMap { degree, matrix }
        })
        .collect())
}

fn sum_vanishes(m: &GradedModule) -> bool {
    let mut s = QMatrix::zeros(m.dim(), m.dim());
    for x in m.actions() {
        s = &s + x;
    }
    s.is_zero()
}

fn nonzero_by_col(a: &QMatrix) -> Vec<Vec<(usize, Rational)>> {
    (0..a.cols())
        .map(|j| {
            (0..a.rows())
                .filter(|&i| !a[(i, j)].is_zero())
                .map(|i| (i, a[(i, j)].clone()))
                .collect()
        })
        .collect()
}

fn nonzero_by_row(a: &QMatrix) -> Vec<Vec<(usize, Rational)>> {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .filter(|&j| !a[(i, j)].is_zero())
                .map(|j| (j, a[(i, j)].clone()))
                .collect()
        })
        .collect()
}
