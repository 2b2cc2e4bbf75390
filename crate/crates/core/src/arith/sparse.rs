//! Incremental row echelon form over sparse rows.
//!
//! Hom and induction systems have thousands of equations with a handful of
//! nonzeros each; inserting them one at a time into an echelon basis keeps
//! the work proportional to the fill-in instead of rows × columns.

use std::collections::BTreeMap;

use crate::scalar::Field;

/// Sparse vector as `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

/// Echelon basis of a row space. Each stored row has a leading 1 in its
/// pivot column and no entries left of it.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(cols: usize) -> Self {
        SparseEchelon {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Add a row; returns whether it enlarged the row space.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let mut row = normalize(row);
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-lead_val, p),
                None => {
                    let inv = lead_val.inv();
                    let scaled = row.into_iter().map(|(c, x)| (c, x * inv.clone())).collect();
                    self.pivots.insert(lead, scaled);
                    return true;
                }
            }
        }
    }

    /// Insert a dense row.
    pub fn insert_dense(&mut self, row: &[F]) -> bool {
        self.insert(
            row.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_negligible())
                .map(|(c, x)| (c, x.clone()))
                .collect(),
        )
    }

    /// Reduce a vector modulo the row space; the result is supported on free
    /// columns and is the same for any two vectors with equal class.
    pub fn reduce(&self, v: SparseRow<F>) -> SparseRow<F> {
        let mut v = normalize(v);
        let mut out: SparseRow<F> = Vec::new();
        while let Some((lead, val)) = v.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => v = axpy(&v, &-val, p),
                None => {
                    out.push((lead, val));
                    v.remove(0);
                }
            }
        }
        out
    }

    /// Basis of `{x : r·x = 0 for every row r}`. Each vector is 1 at its own
    /// free column and 0 at the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let free = self.free_columns();
        free.iter()
            .map(|&f| {
                let mut x = vec![F::zero(); self.cols];
                x[f] = F::one();
                for (&p, row) in self.pivots.iter().rev() {
                    let mut acc = F::zero();
                    for (c, a) in row.iter().skip(1) {
                        if !x[*c].is_negligible() {
                            acc = acc + a.clone() * x[*c].clone();
                        }
                    }
                    x[p] = -acc;
                }
                x
            })
            .collect()
    }
}

fn normalize<F: Field>(mut row: SparseRow<F>) -> SparseRow<F> {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow<F> = Vec::with_capacity(row.len());
    for (c, x) in row {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx = lx.clone() + x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_negligible());
    out
}

/// `a + s·b` for sorted sparse rows.
fn axpy<F: Field>(a: &SparseRow<F>, s: &F, b: &SparseRow<F>) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, s.clone() * b[j].1.clone()));
            j += 1;
        } else {
            let x = a[i].1.clone() + s.clone() * b[j].1.clone();
            if !x.is_negligible() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, QMatrix, Rational};
    use proptest::prelude::*;

    fn dense_rows(m: &QMatrix) -> SparseEchelon<Rational> {
        let mut e = SparseEchelon::new(m.cols());
        for i in 0..m.rows() {
            e.insert_dense(m.row(i));
        }
        e
    }

    #[test]
    fn small_kernel() {
        let m = QMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 1]]);
        let e = dense_rows(&m);
        assert_eq!(e.rank(), 2);
        let k = e.kernel_basis();
        assert_eq!(k, vec![vec![q(1), q(-1), q(1)]]);
    }

    #[test]
    fn reduce_is_class_function() {
        let m = QMatrix::from_i64_rows(&[&[1, 1, 0]]);
        let e = dense_rows(&m);
        let a = e.reduce(vec![(0, q(1))]);
        let b = e.reduce(vec![(1, q(-1))]);
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn agrees_with_dense_elimination(
            rows in 0usize..7, cols in 0usize..7,
            entries in prop::collection::vec(-4i64..=4, 49)
        ) {
            let data: Vec<Rational> = entries.iter().take(rows * cols).map(|&x| q(x)).collect();
            let m = QMatrix::from_vec(rows, cols, data);
            let e = dense_rows(&m);
            prop_assert_eq!(e.rank(), m.rank());
            let k = e.kernel_basis();
            prop_assert_eq!(k.len() + m.rank(), cols);
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
            }
        }
    }
}
