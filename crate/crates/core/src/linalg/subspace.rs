use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::{dense_from_sparse, sparse_axpy, sparse_from_dense, Scalar, SparseVec};
use super::LinalgError;

/// A subspace of `Q^n` stored as the nonzero rows of a reduced row-echelon
/// basis. Pivot columns are strictly increasing and every pivot entry is 1.
///
/// The complement used everywhere in the crate is the span of the standard
/// basis vectors at the non-pivot columns, so quotient coordinates are
/// reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    // sorted by pivot
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_rows(
            ambient,
            (0..ambient).map(|i| std::iter::once((i, Scalar::one())).collect()),
        )
    }

    pub fn from_rows<I: IntoIterator<Item = SparseVec>>(ambient: usize, rows: I) -> Self {
        let mut s = Subspace::zero(ambient);
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn from_dense<'a, I: IntoIterator<Item = &'a [Scalar]>>(ambient: usize, rows: I) -> Self {
        Subspace::from_rows(ambient, rows.into_iter().map(sparse_from_dense))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_sparse_rows(self.ambient, self.rows.clone())
    }

    /// Non-pivot columns in increasing order; these index the complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| self.pivots.binary_search(c).is_err()).collect()
    }

    /// Remainder of `v` after elimination against the basis; zero at every pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = out.get(p).cloned() {
                sparse_axpy(&mut out, &-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[Scalar]) -> bool {
        self.contains(&sparse_from_dense(v))
    }

    /// Coordinates of the class of `v` in the quotient, indexed by position
    /// in [`Subspace::free_columns`].
    pub fn quotient_coords(&self, v: &SparseVec) -> Vec<Scalar> {
        let r = self.reduce(v);
        let free = self.free_columns();
        free.iter().map(|c| r.get(c).cloned().unwrap_or_else(Scalar::zero)).collect()
    }

    /// Adds `v` to the span. Returns `true` when the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.keys().all(|&k| k < self.ambient));
        let mut r = self.reduce(&v);
        let Some((&lead, lc)) = r.iter().next() else {
            return false;
        };
        let inv = lc.recip();
        for x in r.values_mut() {
            *x *= &inv;
        }
        for row in &mut self.rows {
            if let Some(c) = row.get(&lead).cloned() {
                sparse_axpy(row, &-c, &r);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, std::mem::take(&mut r));
        true
    }

    /// Standard basis vectors at non-pivot coordinates.
    pub fn complement(&self) -> Subspace {
        Subspace::from_rows(
            self.ambient,
            self.free_columns().into_iter().map(|c| std::iter::once((c, Scalar::one())).collect()),
        )
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        Ok(s)
    }

    /// Intersection via the Zassenhaus block construction.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let n = self.ambient;
        let mut big = Subspace::zero(2 * n);
        for r in &self.rows {
            let mut row = r.clone();
            for (k, x) in r {
                row.insert(k + n, x.clone());
            }
            big.insert(row);
        }
        for r in &other.rows {
            big.insert(r.clone());
        }
        let rows = big
            .rows
            .iter()
            .zip(&big.pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r.iter().map(|(k, x)| (k - n, x.clone())).collect::<SparseVec>());
        Ok(Subspace::from_rows(n, rows))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(self.rows.iter().all(|r| other.contains(r)))
    }

    pub fn basis_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| dense_from_sparse(r, self.ambient)).collect()
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) fn unit(i: usize) -> SparseVec {
    std::iter::once((i, Scalar::one())).collect()
}

impl Subspace {
    /// Checks the RREF invariants (used by tests).
    pub fn is_reduced(&self) -> bool {
        self.pivots.windows(2).all(|w| w[0] < w[1])
            && self.rows.iter().zip(&self.pivots).all(|(r, p)| {
                r.keys().next() == Some(p)
                    && r.get(p).is_some_and(|x| x.is_one())
                    && self.pivots.iter().all(|q| q == p || !r.contains_key(q))
            })
            && self.rows.iter().all(|r| r.values().all(|x| !x.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        let d: Vec<Vec<Scalar>> = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        Subspace::from_dense(n, d.iter().map(|v| v.as_slice()))
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Subspace::zero(3).complement(), Subspace::full(3));
        assert_eq!(span(2, &[&[1, 0]]).complement(), span(2, &[&[0, 1]]));
        assert_eq!(span(3, &[&[1, 1, 0]]).complement(), span(3, &[&[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn lattice_examples() {
        let s = span(2, &[&[1, 1]]);
        assert_eq!(Subspace::full(2).intersect(&s).unwrap(), s);
        assert_eq!(span(2, &[&[1, 0]]).sum(&span(2, &[&[0, 1]])).unwrap(), Subspace::full(2));
        assert_eq!(span(2, &[&[1, 0], &[0, 1]]).intersect(&s).unwrap(), s);
        assert!(s.contains_dense(&[q(3), q(3)]));
        assert!(!s.contains_dense(&[q(1), q(0)]));
        assert!(matches!(
            s.sum(&Subspace::zero(3)),
            Err(LinalgError::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn quotient_coordinates_use_free_columns() {
        let s = span(3, &[&[1, 1, 0]]);
        let c = s.quotient_coords(&unit(0));
        assert_eq!(c, vec![q(-1), q(0)]);
    }
}
