//! 1-truncated conformal algebras `C = C₀ ⊕ C₁`.
//!
//! Products are stored as four tensors; every product forced to vanish by
//! degree (anything landing below degree 0) is implicit.

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{dense_add, dense_scale, dense_sub, Bilinear, Matrix, Scalar, SparseVec, Subspace};
use crate::report::ViolationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TcaError {
    #[error("tensor `{0}` has inconsistent dimensions")]
    DimensionMismatch(&'static str),
    #[error("bracket is not a Lie bracket:\n{0}")]
    NotLie(ViolationReport),
    #[error("bilinear form is not symmetric")]
    FormNotSymmetric,
    #[error("bilinear form is not invariant")]
    FormNotInvariant,
    #[error("Leibniz decomposition fails:\n{0}")]
    Leibniz(ViolationReport),
    #[error("bracket or action does not descend to C1/dC0:\n{0}")]
    IllDefinedQuotient(ViolationReport),
}

/// Structure constants of a 1-truncated conformal algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tca {
    pub dim0: usize,
    pub dim1: usize,
    /// `∂ : C₀ → C₁`, a `dim1 × dim0` matrix.
    pub partial: Matrix,
    /// `a₀u ∈ C₀`
    pub t0_ab: Bilinear,
    /// `u₀a ∈ C₀`
    pub t0_ba: Bilinear,
    /// `u₀v ∈ C₁`
    pub t0_bb: Bilinear,
    /// `u₁v ∈ C₀`
    pub t1_bb: Bilinear,
}

/// Element of `C₀ ⊕ C₁` in coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elt {
    pub c0: Vec<Scalar>,
    pub c1: Vec<Scalar>,
}

impl Elt {
    pub fn zero(d0: usize, d1: usize) -> Self {
        Elt { c0: vec![Scalar::zero(); d0], c1: vec![Scalar::zero(); d1] }
    }

    pub fn add(&self, o: &Elt) -> Elt {
        Elt { c0: dense_add(&self.c0, &o.c0), c1: dense_add(&self.c1, &o.c1) }
    }

    pub fn sub(&self, o: &Elt) -> Elt {
        Elt { c0: dense_sub(&self.c0, &o.c0), c1: dense_sub(&self.c1, &o.c1) }
    }

    pub fn scale(&self, c: &Scalar) -> Elt {
        Elt { c0: dense_scale(c, &self.c0), c1: dense_scale(c, &self.c1) }
    }

    pub fn concat(&self) -> Vec<Scalar> {
        self.c0.iter().chain(&self.c1).cloned().collect()
    }
}

impl Tca {
    pub fn zero(dim0: usize, dim1: usize) -> Self {
        Tca {
            dim0,
            dim1,
            partial: Matrix::zeros(dim1, dim0),
            t0_ab: Bilinear::zeros(dim0, dim1, dim0),
            t0_ba: Bilinear::zeros(dim1, dim0, dim0),
            t0_bb: Bilinear::zeros(dim1, dim1, dim1),
            t1_bb: Bilinear::zeros(dim1, dim1, dim0),
        }
    }

    pub fn check_dims(&self) -> Result<(), TcaError> {
        let (d0, d1) = (self.dim0, self.dim1);
        if (self.partial.rows(), self.partial.cols()) != (d1, d0) {
            return Err(TcaError::DimensionMismatch("partial"));
        }
        let checks = [
            ("t0_ab", self.t0_ab.dims(), (d0, d1, d0)),
            ("t0_ba", self.t0_ba.dims(), (d1, d0, d0)),
            ("t0_bb", self.t0_bb.dims(), (d1, d1, d1)),
            ("t1_bb", self.t1_bb.dims(), (d1, d1, d0)),
        ];
        for (name, got, want) in checks {
            if got != want {
                return Err(TcaError::DimensionMismatch(name));
            }
        }
        Ok(())
    }

    /// Basis element `k` of `C₀ ⊕ C₁`; `C₀` comes first.
    pub fn basis(&self, k: usize) -> Elt {
        let mut e = Elt::zero(self.dim0, self.dim1);
        if k < self.dim0 {
            e.c0[k] = Scalar::from_integer(1.into());
        } else {
            e.c1[k - self.dim0] = Scalar::from_integer(1.into());
        }
        e
    }

    pub fn total_dim(&self) -> usize {
        self.dim0 + self.dim1
    }

    pub fn partial_of(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.partial.apply(a)
    }

    /// `∂` on `C₀ ⊕ C₁` (zero on `C₁`).
    pub fn d(&self, x: &Elt) -> Elt {
        Elt { c0: vec![Scalar::zero(); self.dim0], c1: self.partial_of(&x.c0) }
    }

    /// `x_i y` for `i ∈ {0, 1}`.
    pub fn prod(&self, i: usize, x: &Elt, y: &Elt) -> Elt {
        match i {
            0 => Elt {
                c0: dense_add(&self.t0_ab.apply(&x.c0, &y.c1), &self.t0_ba.apply(&x.c1, &y.c0)),
                c1: self.t0_bb.apply(&x.c1, &y.c1),
            },
            1 => Elt { c0: self.t1_bb.apply(&x.c1, &y.c1), c1: vec![Scalar::zero(); self.dim1] },
            _ => Elt::zero(self.dim0, self.dim1),
        }
    }

    /// Image `∂C₀ ⊆ C₁`.
    pub fn boundary(&self) -> Subspace {
        Subspace::from_rows(self.dim1, (0..self.dim0).map(|a| self.partial.column(a)))
    }

    fn derivation_and_commutativity(&self, r: &mut ViolationReport) {
        let n = self.total_dim();
        for a in 0..self.dim0 {
            let da = self.d(&self.basis(a));
            for k in 0..n {
                let b = self.basis(k);
                r.check("derivation-partial-0", &[a, k], self.prod(0, &da, &b).concat());
                let lhs = self.prod(1, &da, &b);
                let rhs = self.prod(0, &self.basis(a), &b).scale(&-Scalar::from_integer(1.into()));
                r.check("derivation-partial-1", &[a, k], lhs.sub(&rhs).concat());
            }
        }
        for u in self.dim0..n {
            let bu = self.basis(u);
            for a in 0..self.dim0 {
                let ba = self.basis(a);
                let sum = self.prod(0, &bu, &ba).add(&self.prod(0, &ba, &bu));
                r.check("commutativity-mixed", &[u, a], sum.concat());
            }
            for v in self.dim0..n {
                let bv = self.basis(v);
                let lhs = self.prod(0, &bu, &bv).add(&self.prod(0, &bv, &bu));
                let rhs = self.d(&self.prod(1, &bv, &bu));
                r.check("commutativity-0", &[u, v], lhs.sub(&rhs).concat());
                let d1 = self.prod(1, &bu, &bv).sub(&self.prod(1, &bv, &bu));
                r.check("commutativity-1", &[u, v], d1.concat());
            }
        }
    }

    fn associativity(&self, i: usize, al: usize, be: usize, ga: usize) -> Vec<Scalar> {
        let (a, b, c) = (self.basis(al), self.basis(be), self.basis(ga));
        let lhs = self.prod(0, &a, &self.prod(i, &b, &c));
        let r1 = self.prod(i, &b, &self.prod(0, &a, &c));
        let r2 = self.prod(i, &self.prod(0, &a, &b), &c);
        lhs.sub(&r1).sub(&r2).concat()
    }

    /// Every axiom instance on basis elements.
    pub fn check(&self) -> Result<ViolationReport, TcaError> {
        self.check_dims()?;
        let mut r = ViolationReport::new();
        self.derivation_and_commutativity(&mut r);
        let n = self.total_dim();
        for u in self.dim0..n {
            for a in 0..self.dim0 {
                let lhs = self.d(&self.prod(0, &self.basis(u), &self.basis(a)));
                let rhs = self.prod(0, &self.basis(u), &self.d(&self.basis(a)));
                r.check("derivation-equivariance", &[u, a], lhs.sub(&rhs).concat());
            }
        }
        for i in 0..2 {
            for al in 0..n {
                for be in 0..n {
                    for ga in 0..n {
                        let res = self.associativity(i, al, be, ga);
                        r.check(ASSOC[i], &[al, be, ga], res);
                    }
                }
            }
        }
        Ok(r)
    }

    /// The reduced axiom set: first two derivation relations, commutativity,
    /// associativity on `C₁³` for `i = 0, 1` and on `C₀ × C₁²` for `i = 0`.
    pub fn check_reduced(&self) -> Result<ViolationReport, TcaError> {
        self.check_dims()?;
        let mut r = ViolationReport::new();
        self.derivation_and_commutativity(&mut r);
        let n = self.total_dim();
        let c1 = self.dim0..n;
        for i in 0..2 {
            for al in c1.clone() {
                for be in c1.clone() {
                    for ga in c1.clone() {
                        r.check(ASSOC[i], &[al, be, ga], self.associativity(i, al, be, ga));
                    }
                }
            }
        }
        for al in 0..self.dim0 {
            for be in c1.clone() {
                for ga in c1.clone() {
                    r.check(ASSOC[0], &[al, be, ga], self.associativity(0, al, be, ga));
                }
            }
        }
        Ok(r)
    }

    pub fn direct_sum(&self, o: &Tca) -> Tca {
        let (a0, a1) = (self.dim0, self.dim1);
        let mut t = Tca::zero(a0 + o.dim0, a1 + o.dim1);
        for (src, s0, s1) in [(self, 0, 0), (o, a0, a1)] {
            for r in 0..src.dim1 {
                for (c, x) in src.partial.row(r) {
                    t.partial.set(r + s1, c + s0, x.clone());
                }
            }
            for ((i, j, k), x) in src.t0_ab.entries() {
                t.t0_ab.set(i + s0, j + s1, k + s0, x.clone());
            }
            for ((i, j, k), x) in src.t0_ba.entries() {
                t.t0_ba.set(i + s1, j + s0, k + s0, x.clone());
            }
            for ((i, j, k), x) in src.t0_bb.entries() {
                t.t0_bb.set(i + s1, j + s1, k + s1, x.clone());
            }
            for ((i, j, k), x) in src.t1_bb.entries() {
                t.t1_bb.set(i + s1, j + s1, k + s0, x.clone());
            }
        }
        t
    }

    /// Same algebra in new bases whose vectors are the columns of `p0`, `p1`.
    /// `None` if either matrix is singular.
    pub fn change_basis(&self, p0: &Matrix, p1: &Matrix) -> Option<Tca> {
        let q0 = p0.inverse()?;
        let q1 = p1.inverse()?;
        Some(Tca {
            dim0: self.dim0,
            dim1: self.dim1,
            partial: q1.mul(&self.partial).mul(p0),
            t0_ab: self.t0_ab.change_basis(p0, p1, &q0),
            t0_ba: self.t0_ba.change_basis(p1, p0, &q0),
            t0_bb: self.t0_bb.change_basis(p1, p1, &q1),
            t1_bb: self.t1_bb.change_basis(p1, p1, &q0),
        })
    }

    /// `u₁v ↦ λ·u₁v`, `∂ ↦ ∂/λ`; preserves validity for `λ ≠ 0`.
    pub fn rescale_pairing(&self, lambda: &Scalar) -> Tca {
        let mut t = self.clone();
        let (d1, d0) = (self.dim1, self.dim0);
        let mut scaled = Bilinear::zeros(d1, d1, d0);
        for ((i, j, k), x) in self.t1_bb.entries() {
            scaled.set(i, j, k, x * lambda);
        }
        t.t1_bb = scaled;
        t.partial = self.partial.scale(&lambda.recip());
        t
    }
}

const ASSOC: [&str; 2] = ["associativity-0", "associativity-1"];

/// A Lie algebra by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub bracket: Bilinear,
}

impl LieAlgebra {
    pub fn new(bracket: Bilinear) -> Self {
        LieAlgebra { bracket }
    }

    pub fn dim(&self) -> usize {
        self.bracket.dims().0
    }

    /// Antisymmetry and Jacobi on basis triples.
    pub fn check(&self) -> ViolationReport {
        let mut r = ViolationReport::new();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let s = dense_add(self.bracket.basis(i, j), self.bracket.basis(j, i));
                r.check("antisymmetry", &[i, j], s);
                for k in 0..n {
                    r.check("jacobi", &[i, j, k], self.jacobiator(i, j, k));
                }
            }
        }
        r
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let e = |x| unit_dense(self.dim(), x);
        let b = &self.bracket;
        let x = b.apply(&e(i), b.basis(j, k));
        let y = b.apply(&e(j), b.basis(k, i));
        let z = b.apply(&e(k), b.basis(i, j));
        dense_add(&dense_add(&x, &y), &z)
    }
}

pub(crate) fn unit_dense(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::from_integer(1.into());
    v
}

/// Builds `ℚ ⊕ g` with `∂ = 0`, `u₀v = [u,v]`, `u₁v = ⟨u,v⟩·1`.
pub fn from_quadratic_lie(bracket: &Bilinear, form: &Matrix) -> Result<Tca, TcaError> {
    let n = bracket.dims().0;
    if bracket.dims() != (n, n, n) {
        return Err(TcaError::DimensionMismatch("bracket"));
    }
    if (form.rows(), form.cols()) != (n, n) {
        return Err(TcaError::DimensionMismatch("form"));
    }
    let lie = LieAlgebra::new(bracket.clone());
    let rep = lie.check();
    if !rep.is_empty() {
        return Err(TcaError::NotLie(rep));
    }
    if form.transpose() != *form {
        return Err(TcaError::FormNotSymmetric);
    }
    for x in 0..n {
        for y in 0..n {
            let xy = bracket.basis(x, y);
            for z in 0..n {
                let lhs: Scalar = (0..n).map(|k| &xy[k] * form.get(k, z)).sum();
                let yz = bracket.basis(y, z);
                let rhs: Scalar = (0..n).map(|k| form.get(x, k) * &yz[k]).sum();
                if lhs != rhs {
                    return Err(TcaError::FormNotInvariant);
                }
            }
        }
    }
    let mut t = Tca::zero(1, n);
    t.t0_bb = bracket.clone();
    for i in 0..n {
        for j in 0..n {
            t.t1_bb.set(i, j, 0, form.get(i, j));
        }
    }
    Ok(t)
}

/// Leibniz algebra `C₁`, its module `C₀`, the pairing and `∂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizDecomposition {
    pub bracket: Bilinear,
    pub action: Bilinear,
    pub pairing: Bilinear,
    pub partial: Matrix,
}

impl LeibnizDecomposition {
    fn dims(&self) -> (usize, usize) {
        (self.partial.cols(), self.partial.rows())
    }

    /// Re-evaluates the five structural properties and the four relations
    /// linking them.
    pub fn check(&self) -> ViolationReport {
        let (d0, d1) = self.dims();
        let mut r = ViolationReport::new();
        let u1 = |i| unit_dense(d1, i);
        let u0 = |i| unit_dense(d0, i);
        let br = &self.bracket;
        let act = &self.action;
        let pr = &self.pairing;
        for u in 0..d1 {
            for v in 0..d1 {
                for w in 0..d1 {
                    // u(vw) = (uv)w + v(uw)
                    let lhs = br.apply(&u1(u), br.basis(v, w));
                    let a = br.apply(br.basis(u, v), &u1(w));
                    let b = br.apply(&u1(v), br.basis(u, w));
                    r.check("leibniz", &[u, v, w], dense_sub(&lhs, &dense_add(&a, &b)));
                    // u<v,w> = <[u,v],w> + <v,[u,w]>
                    let lhs = act.apply(&u1(u), pr.basis(v, w));
                    let a = pr.apply(br.basis(u, v), &u1(w));
                    let b = pr.apply(&u1(v), br.basis(u, w));
                    r.check("pairing-invariance", &[u, v, w], dense_sub(&lhs, &dense_add(&a, &b)));
                }
                for a in 0..d0 {
                    // [u,v]·a = u(v a) - v(u a)
                    let lhs = act.apply(br.basis(u, v), &u0(a));
                    let x = act.apply(&u1(u), act.basis(v, a));
                    let y = act.apply(&u1(v), act.basis(u, a));
                    r.check("module", &[u, v, a], dense_sub(&lhs, &dense_sub(&x, &y)));
                }
                let s = dense_add(br.basis(u, v), br.basis(v, u));
                let d = self.partial.apply(pr.basis(u, v));
                r.check("bracket-symmetric", &[u, v], dense_sub(&s, &d));
                r.check("pairing-symmetric", &[u, v], dense_sub(pr.basis(u, v), pr.basis(v, u)));
            }
            for a in 0..d0 {
                let da = self.partial.apply(&u0(a));
                // ∂(u·a) = [u, ∂a]
                let lhs = self.partial.apply(act.basis(u, a));
                let rhs = br.apply(&u1(u), &da);
                r.check("partial-equivariance", &[u, a], dense_sub(&lhs, &rhs));
                // ∂a annihilates C₀ ⊕ C₁
                let mut ann = br.apply(&da, &u1(u));
                for b in 0..d0 {
                    ann.extend(act.apply(&da, &u0(b)));
                }
                r.check("partial-annihilates", &[a, u], ann);
                // ⟨∂a, u⟩ = -a₀u = u·a
                let lhs = pr.apply(&da, &u1(u));
                r.check("pairing-partial", &[a, u], dense_sub(&lhs, act.basis(u, a)));
            }
        }
        r
    }
}

/// Splits a Tca into its Leibniz data. Fails with the violated properties.
pub fn decompose_leibniz(c: &Tca) -> Result<LeibnizDecomposition, TcaError> {
    c.check_dims()?;
    let mut skew = ViolationReport::new();
    for u in 0..c.dim1 {
        for a in 0..c.dim0 {
            let s = dense_add(c.t0_ba.basis(u, a), c.t0_ab.basis(a, u));
            skew.check("action-skew", &[u, a], s);
        }
    }
    let dec = LeibnizDecomposition {
        bracket: c.t0_bb.clone(),
        action: c.t0_ba.clone(),
        pairing: c.t1_bb.clone(),
        partial: c.partial.clone(),
    };
    let mut rep = dec.check();
    rep.extend(skew);
    if rep.is_empty() {
        Ok(dec)
    } else {
        Err(TcaError::Leibniz(rep))
    }
}

/// Lie algebra `C₁/∂C₀` with its action on `C₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieQuotient {
    pub lie: LieAlgebra,
    pub action: Bilinear,
    /// Columns of `C₁` spanning the chosen complement of `∂C₀`.
    pub free: Vec<usize>,
    pub boundary: Subspace,
}

impl LieQuotient {
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let sv: SparseVec =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        self.boundary.quotient_coords(&sv)
    }

    pub fn lift(&self, i: usize) -> Vec<Scalar> {
        unit_dense(self.boundary.ambient(), self.free[i])
    }

    /// `[x,y]·a = x(y a) − y(x a)` on basis elements.
    pub fn check_module(&self) -> ViolationReport {
        let n = self.lie.dim();
        let d0 = self.action.dims().2;
        let mut r = ViolationReport::new();
        for x in 0..n {
            for y in 0..n {
                for a in 0..d0 {
                    let lhs = self.action.apply(self.lie.bracket.basis(x, y), &unit_dense(d0, a));
                    let p = self.action.apply(&unit_dense(n, x), self.action.basis(y, a));
                    let q = self.action.apply(&unit_dense(n, y), self.action.basis(x, a));
                    r.check("module", &[x, y, a], dense_sub(&lhs, &dense_sub(&p, &q)));
                }
            }
        }
        r
    }
}

pub fn lie_quotient(c: &Tca) -> Result<LieQuotient, TcaError> {
    c.check_dims()?;
    let boundary = c.boundary();
    let free = boundary.free_columns();
    let n = free.len();
    let proj = |v: &[Scalar]| -> Vec<Scalar> {
        let sv: SparseVec =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        boundary.quotient_coords(&sv)
    };
    let mut bracket = Bilinear::zeros(n, n, n);
    let mut action = Bilinear::zeros(n, c.dim0, c.dim0);
    for (i, &fi) in free.iter().enumerate() {
        for (j, &fj) in free.iter().enumerate() {
            bracket.set_basis(i, j, &proj(c.t0_bb.basis(fi, fj)));
        }
        for a in 0..c.dim0 {
            action.set_basis(i, a, c.t0_ba.basis(fi, a));
        }
    }
    let mut bad = ViolationReport::new();
    for a in 0..c.dim0 {
        let da = c.partial_of(&unit_dense(c.dim0, a));
        for v in 0..c.dim1 {
            let ev = unit_dense(c.dim1, v);
            bad.check("boundary-left", &[a, v], proj(&c.t0_bb.apply(&da, &ev)));
            bad.check("boundary-right", &[v, a], proj(&c.t0_bb.apply(&ev, &da)));
        }
        for b in 0..c.dim0 {
            bad.check("boundary-action", &[a, b], c.t0_ba.apply(&da, &unit_dense(c.dim0, b)));
        }
    }
    if !bad.is_empty() {
        return Err(TcaError::IllDefinedQuotient(bad));
    }
    Ok(LieQuotient { lie: LieAlgebra::new(bracket), action, free, boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::q;

    #[test]
    fn heisenberg_and_sl2_are_valid() {
        for t in [catalog::heisenberg(q(1)), catalog::sl2(q(1)), catalog::sl2(q(0)), Tca::zero(2, 3)] {
            assert!(t.check().unwrap().is_empty());
            assert!(t.check_reduced().unwrap().is_empty());
        }
    }

    #[test]
    fn perturbed_pairing_is_caught() {
        let mut t = catalog::sl2(q(1));
        t.t1_bb.add_to(0, 2, 0, &q(1));
        let rep = t.check().unwrap();
        assert!(rep.has("commutativity-1"));
        assert!(!t.check_reduced().unwrap().is_empty());
    }

    #[test]
    fn sl2_decomposition_recovers_trace_form() {
        let t = catalog::sl2(q(1));
        let d = decompose_leibniz(&t).unwrap();
        assert_eq!(d.bracket, t.t0_bb);
        // basis e, h, f
        assert_eq!(*d.pairing.get(1, 1, 0), q(2));
        assert_eq!(*d.pairing.get(0, 2, 0), q(1));
        let z = decompose_leibniz(&Tca::zero(1, 1)).unwrap();
        assert!(z.bracket.is_zero() && z.pairing.is_zero());
    }

    #[test]
    fn quotient_examples() {
        let lq = lie_quotient(&catalog::sl2(q(1))).unwrap();
        assert_eq!(lq.lie.dim(), 3);
        assert_eq!(lq.lie.bracket, catalog::sl2(q(1)).t0_bb);
        assert!(lq.lie.check().is_empty());

        let mut t = Tca::zero(1, 1);
        t.partial.set(0, 0, q(1));
        assert!(t.check().unwrap().is_empty());
        assert_eq!(lie_quotient(&t).unwrap().lie.dim(), 0);
    }

    #[test]
    fn quadratic_lie_rejects_bad_forms() {
        let (br, _) = catalog::sl2_data();
        let mut f = Matrix::zeros(3, 3);
        f.set(0, 1, q(1));
        assert_eq!(from_quadratic_lie(&br, &f), Err(TcaError::FormNotSymmetric));
        let mut f = Matrix::zeros(3, 3);
        f.set(0, 0, q(1));
        assert_eq!(from_quadratic_lie(&br, &f), Err(TcaError::FormNotInvariant));
    }

    #[test]
    fn sums_and_basis_changes_stay_valid() {
        let h = catalog::heisenberg(q(1));
        let hh = h.direct_sum(&h);
        assert_eq!((hh.dim0, hh.dim1), (2, 2));
        assert!(hh.check().unwrap().is_empty());
        let s = catalog::sl2(q(1)).direct_sum(&h);
        assert!(s.check().unwrap().is_empty());
        assert_eq!(h.direct_sum(&Tca::zero(0, 0)), h);

        let alg = catalog::line_algebroid().to_tca().unwrap();
        let mut p0 = Matrix::identity(alg.dim0);
        p0.set(0, 1, q(3));
        let mut p1 = Matrix::identity(alg.dim1);
        p1.set(1, 0, q(-2));
        let moved = alg.change_basis(&p0, &p1).unwrap();
        assert!(moved.check().unwrap().is_empty());
        assert!(alg.rescale_pairing(&q(5)).check().unwrap().is_empty());
    }
}
