//! Dense matrices and Gaussian elimination over a field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, PartialEq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let owned: Vec<Vec<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        if owned.is_empty() {
            return Self::zeros(0, 0);
        }
        Self::from_rows(&owned)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_negligible)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_negligible() && !b.is_negligible() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// `self * other`, skipping zero entries.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_negligible() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_negligible() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_negligible()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].inv();
            let mut support = Vec::new();
            for j in c..cols {
                let idx = r * cols + j;
                if !self.data[idx].is_negligible() {
                    self.data[idx] = self.data[idx].clone() * inv.clone();
                    support.push(j);
                } else {
                    self.data[idx] = F::zero();
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c].clone();
                if f.is_negligible() {
                    continue;
                }
                for &j in &support {
                    let delta = f.clone() * self.data[r * cols + j].clone();
                    let idx = i * cols + j;
                    self.data[idx] = self.data[idx].clone() - delta;
                }
                self.data[i * cols + c] = F::zero();
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the null space. Each vector has a 1 in its own free column
    /// and 0 in every other free column, so coordinates of a kernel element
    /// can be read off at the free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free = free_columns(self.cols, &pivots);
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    let x = &matrix[(row, f)];
                    if !x.is_negligible() {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(aug.select(&rows, &cols))
    }
}

pub(crate) fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

/// Reusable solver for `A x = b` with a fixed `A`.
///
/// Row-reduces `[A | I]` once; each right-hand side then costs one
/// matrix-vector product.
#[derive(Clone)]
pub struct Solver<F> {
    cols: usize,
    pivots: Vec<usize>,
    transform: Matrix<F>,
}

impl<F: Field> Solver<F> {
    pub fn new(a: &Matrix<F>) -> Self {
        let (rows, cols) = (a.rows(), a.cols());
        let mut aug = Matrix::zeros(rows, cols + rows);
        for i in 0..rows {
            for j in 0..cols {
                aug[(i, j)] = a[(i, j)].clone();
            }
            aug[(i, cols + i)] = F::one();
        }
        let pivots: Vec<usize> = aug
            .rref_in_place()
            .into_iter()
            .take_while(|&p| p < cols)
            .collect();
        let all_rows: Vec<usize> = (0..rows).collect();
        let t_cols: Vec<usize> = (cols..cols + rows).collect();
        Solver {
            cols,
            pivots,
            transform: aug.select(&all_rows, &t_cols),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let reduced = self.transform.mul_vec(b);
        if reduced[self.pivots.len()..]
            .iter()
            .any(|x| !x.is_negligible())
        {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in self.pivots.iter().enumerate() {
            x[p] = reduced[row].clone();
        }
        Some(x)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.matmul(rhs)
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<F: fmt::Display> fmt::Debug for Rref<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rref {{ matrix: {:?}, pivots: {:?}, rank: {} }}", self.matrix, self.pivots, self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QMatrix, Rational};
    use num_traits::Zero;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rref_examples() {
        let id = QMatrix::identity(2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let m = QMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, QMatrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);

        let e = QMatrix::zeros(0, 0).rref();
        assert_eq!(e.rank, 0);
        assert_eq!(e.matrix.rows(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(QMatrix::identity(3).kernel_basis().is_empty());
        let k = QMatrix::from_i64_rows(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
        assert_eq!(QMatrix::zeros(2, 2).kernel_basis().len(), 2);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-2)];
        assert_eq!(QMatrix::identity(2).solve(&b), Some(b.clone()));
        let m = QMatrix::from_i64_rows(&[&[1, 1]]);
        let x = m.solve(&[q(3)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(3)]);
        let m = QMatrix::from_i64_rows(&[&[1], &[1]]);
        assert_eq!(m.solve(&[q(0), q(1)]), None);
    }

    #[test]
    fn solver_matches_solve() {
        let m = QMatrix::from_i64_rows(&[&[1, 2, 0], &[0, 1, 1], &[1, 3, 1]]);
        let s = Solver::new(&m);
        assert_eq!(s.rank(), 2);
        let b = m.mul_vec(&[q(1), q(-1), q(4)]);
        let x = s.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(s.solve(&[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        assert!(QMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(QMatrix::zeros(1, 1).inverse().is_none());
        assert!(!QMatrix::identity(1)[(0, 0)].is_zero());
    }

    #[test]
    fn float_elimination() {
        let m: Matrix<f64> = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }
}
