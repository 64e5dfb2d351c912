//! Irreducibility and isomorphism tests for finite sets of operators.
//!
//! Simplicity uses Norton's criterion: for a singular `θ` in the operator
//! algebra with one-dimensional kernel, the module is simple iff the kernel
//! vector generates everything and the kernel vector of `θᵀ` generates the
//! dual.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{kernel, q, Matrix, Scalar, SparseVec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    /// `false` when the verdict rests on a sampled search.
    pub certain: bool,
    /// A proper nonzero invariant subspace, when one was found.
    pub witness: Option<Subspace>,
}

fn flatten(m: &Matrix) -> SparseVec {
    let n = m.cols();
    let mut out = SparseVec::new();
    for r in 0..m.rows() {
        for (c, x) in m.row(r) {
            out.insert(r * n + c, x.clone());
        }
    }
    out
}

fn unflatten(v: &SparseVec, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for (k, x) in v {
        m.set(k / cols, k % cols, x.clone());
    }
    m
}

/// Basis of the unital algebra generated by `ops`.
pub fn algebra_span(ops: &[Matrix], n: usize) -> Vec<Matrix> {
    let mut span = Subspace::zero(n * n);
    let mut found = Vec::new();
    let id = Matrix::identity(n);
    if n == 0 {
        return found;
    }
    span.insert(flatten(&id));
    found.push(id);
    let mut next = 0;
    while next < found.len() {
        let m = found[next].clone();
        next += 1;
        for g in ops {
            let p = g.mul(&m);
            if span.insert(flatten(&p)) {
                found.push(p);
            }
        }
    }
    found
}

/// `span{ x v : x ∈ alg }`.
pub fn orbit(alg: &[Matrix], v: &SparseVec, n: usize) -> Subspace {
    Subspace::from_rows(n, alg.iter().map(|m| m.apply_sparse(v)))
}

/// Smallest subspace containing `seed` and stable under `ops`.
pub fn invariant_closure(ops: &[Matrix], seed: &Subspace) -> Subspace {
    let mut s = seed.clone();
    let mut queue: Vec<SparseVec> = s.basis_rows().to_vec();
    while let Some(v) = queue.pop() {
        for g in ops {
            let w = g.apply_sparse(&v);
            if s.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    s
}

fn candidates(alg: &[Matrix], n: usize) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = alg.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..40 {
        let mut m = Matrix::zeros(n, n);
        for b in alg {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                m = m.lin_comb(&q(c), b);
            }
        }
        out.push(m);
    }
    out
}

pub fn simplicity(ops: &[Matrix], n: usize) -> Simplicity {
    let certain = |simple, witness| Simplicity { simple, certain: true, witness };
    if n == 0 {
        return certain(false, None);
    }
    if n == 1 {
        return certain(true, None);
    }
    let alg = algebra_span(ops, n);
    if alg.len() == n * n {
        return certain(true, None);
    }
    let e0: SparseVec = std::iter::once((0, Scalar::one())).collect();
    if alg.len() < n {
        return certain(false, Some(orbit(&alg, &e0, n)));
    }
    let algt: Vec<Matrix> = alg.iter().map(Matrix::transpose).collect();
    for theta in candidates(&alg, n) {
        if theta.is_zero() {
            continue;
        }
        let k = kernel(&theta);
        if k.is_zero() {
            continue;
        }
        for v in k.basis_rows() {
            let o = orbit(&alg, v, n);
            if o.dim() < n {
                return certain(false, Some(o));
            }
        }
        if k.dim() == 1 {
            let kt = kernel(&theta.transpose());
            let w = &kt.basis_rows()[0];
            let o = orbit(&algt, w, n);
            if o.dim() < n {
                // annihilator of a proper dual submodule
                return certain(false, Some(kernel(&o.basis_matrix())));
            }
            return certain(true, None);
        }
    }
    Simplicity { simple: alg.len() == n && orbit(&alg, &e0, n).dim() == n, certain: false, witness: None }
}

/// Basis of `{ X : X·a_i = b_i·X }` with `X` of shape `n2 × n1`.
pub fn intertwiners(a: &[Matrix], b: &[Matrix], n1: usize, n2: usize) -> Vec<Matrix> {
    assert_eq!(a.len(), b.len());
    let var = |r: usize, c: usize| r * n1 + c;
    let mut rows = Vec::new();
    for (g1, g2) in a.iter().zip(b) {
        for i in 0..n2 {
            for j in 0..n1 {
                let mut row = SparseVec::new();
                for k in 0..n1 {
                    let x = g1.get(k, j);
                    if !x.is_zero() {
                        *row.entry(var(i, k)).or_insert_with(Scalar::zero) += x;
                    }
                }
                for k in 0..n2 {
                    let x = g2.get(i, k);
                    if !x.is_zero() {
                        *row.entry(var(k, j)).or_insert_with(Scalar::zero) -= x;
                    }
                }
                row.retain(|_, x| !x.is_zero());
                rows.push(row);
            }
        }
    }
    let m = Matrix::from_sparse_rows(n1 * n2, rows);
    kernel(&m).basis_rows().iter().map(|v| unflatten(v, n2, n1)).collect()
}

/// An invertible intertwiner, if one turns up among basis elements and
/// seeded random combinations of them.
pub fn find_isomorphism(a: &[Matrix], b: &[Matrix], n1: usize, n2: usize) -> Option<Matrix> {
    if n1 != n2 || a.len() != b.len() {
        return None;
    }
    if n1 == 0 {
        return Some(Matrix::zeros(0, 0));
    }
    let sols = intertwiners(a, b, n1, n2);
    if sols.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut tries: Vec<Matrix> = sols.clone();
    for _ in 0..40 {
        let mut m = Matrix::zeros(n2, n1);
        for s in &sols {
            m = m.lin_comb(&q(rng.gen_range(-5..=5)), s);
        }
        tries.push(m);
    }
    tries.into_iter().find(|m| m.inverse().is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(xs: &[i64]) -> Matrix {
        let mut m = Matrix::zeros(xs.len(), xs.len());
        for (i, &x) in xs.iter().enumerate() {
            m.set(i, i, q(x));
        }
        m
    }

    #[test]
    fn isotypic_sum_is_not_simple() {
        // S ⊕ S: orbits of basis vectors are proper but so are all orbits
        let s = simplicity(&[diag(&[2, 2])], 2);
        assert!(!s.simple && s.certain);
        let s = simplicity(&[diag(&[1, 2])], 2);
        assert!(!s.simple && s.certain);
    }

    #[test]
    fn rotation_is_simple_over_q_but_uncertain() {
        let mut r = Matrix::zeros(2, 2);
        r.set(0, 1, q(-1));
        r.set(1, 0, q(1));
        let s = simplicity(&[r], 2);
        assert!(s.simple);
    }

    #[test]
    fn full_matrix_algebra() {
        let mut e = Matrix::zeros(2, 2);
        e.set(0, 1, q(1));
        let f = e.transpose();
        let s = simplicity(&[e, f], 2);
        assert!(s.simple && s.certain);
    }

    #[test]
    fn intertwiner_search() {
        let a = [diag(&[1, 2])];
        let b = [diag(&[2, 1])];
        let x = find_isomorphism(&a, &b, 2, 2).unwrap();
        assert_eq!(x.mul(&a[0]), b[0].mul(&x));
        assert!(find_isomorphism(&[diag(&[1, 2])], &[diag(&[1, 3])], 2, 2).is_none());
    }
}
