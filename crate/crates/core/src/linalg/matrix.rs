use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{dense_from_sparse, sparse_axpy, sparse_from_dense, Scalar, SparseVec};
use super::subspace::Subspace;

/// Row-sparse rational matrix. Rows are [`SparseVec`]s with no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Scalar::one());
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[Vec<Scalar>]) -> Self {
        assert_eq!(entries.len(), rows);
        let data = entries
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                sparse_from_dense(r)
            })
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.keys().all(|&k| k < cols)));
        Matrix { rows: rows.len(), cols, data: rows }
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c {
                m.data[*i].insert(j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols);
        if value.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, value);
        }
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &SparseVec> {
        self.data.iter()
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&c).map(|x| (i, x.clone())))
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data.iter().map(|r| dense_from_sparse(r, self.cols)).collect()
    }

    /// `M v` for a dense column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|r| r.iter().fold(Scalar::zero(), |acc, (j, x)| acc + x * &v[*j]))
            .collect()
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (j, x) in v {
                if let Some(m) = r.get(j) {
                    acc += m * x;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r {
                t.data[*j].insert(i, x.clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, x) in r {
                sparse_axpy(&mut acc, x, &other.data[*k]);
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.lin_comb(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.lin_comb(&-Scalar::one(), other)
    }

    /// `self + c * other`.
    pub fn lin_comb(&self, c: &Scalar, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, r) in other.data.iter().enumerate() {
            sparse_axpy(&mut out.data[i], c, r);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::zeros(self.rows, self.cols).lin_comb(c, self)
    }

    /// Two-sided inverse, or `None` when singular or non-square.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.data.iter().enumerate().map(|(i, r)| {
            let mut row = r.clone();
            row.insert(n + i, Scalar::one());
            row
        });
        let s = Subspace::from_rows(2 * n, aug);
        if s.pivots().iter().copied().take(n).ne(0..n) || s.pivots().len() < n {
            return None;
        }
        let rows = s.basis_rows()[..n]
            .iter()
            .map(|r| r.range(n..).map(|(k, x)| (k - n, x.clone())).collect())
            .collect();
        Some(Matrix::from_sparse_rows(n, rows))
    }

    /// Stack rows of `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.to_dense() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form together with the pivot columns.
/// Zero rows are moved to the bottom; the row space is unchanged.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let s = Subspace::from_rows(m.cols(), m.row_iter().cloned());
    let pivots = s.pivots().to_vec();
    let mut rows: Vec<SparseVec> = s.basis_rows().to_vec();
    rows.resize(m.rows(), SparseVec::new());
    (Matrix::from_sparse_rows(m.cols(), rows), pivots)
}

pub fn rank(m: &Matrix) -> usize {
    Subspace::from_rows(m.cols(), m.row_iter().cloned()).dim()
}

/// Null space `{ x : M x = 0 }`.
pub fn kernel(m: &Matrix) -> Subspace {
    let s = Subspace::from_rows(m.cols(), m.row_iter().cloned());
    let pivots = s.pivots();
    let free: Vec<usize> = (0..m.cols()).filter(|c| pivots.binary_search(c).is_err()).collect();
    let vectors = free.iter().map(|&f| {
        let mut v = SparseVec::new();
        v.insert(f, Scalar::one());
        for (row, &p) in s.basis_rows().iter().zip(pivots) {
            if let Some(x) = row.get(&f) {
                v.insert(p, -x.clone());
            }
        }
        v
    });
    Subspace::from_rows(m.cols(), vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn mat(rows: &[&[i64]]) -> Matrix {
        let d: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Matrix::from_dense(rows.len(), rows[0].len(), &d)
    }

    #[test]
    fn rref_identity() {
        let (r, p) = rref(&Matrix::identity(2));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = rref(&mat(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, mat(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zeros(2, 3);
        let (r, p) = rref(&z);
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::identity(3)).dim(), 0);
        assert_eq!(kernel(&Matrix::zeros(3, 3)).dim(), 3);
        let k = kernel(&mat(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains_dense(&[q(1), q(-1)]));
    }

    #[test]
    fn mul_and_transpose() {
        let a = mat(&[&[1, 2], &[0, 1]]);
        let b = mat(&[&[1, 0], &[3, 1]]);
        assert_eq!(a.mul(&b), mat(&[&[7, 2], &[3, 1]]));
        assert_eq!(a.transpose(), mat(&[&[1, 0], &[2, 1]]));
        assert_eq!(a.sub(&a), Matrix::zeros(2, 2));
        assert_eq!(a.apply(&[q(1), q(1)]), vec![q(3), q(1)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
