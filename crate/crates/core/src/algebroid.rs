//! Vertex A-algebroids, Lie A-algebroids and their modules.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::irreducible::{self, Simplicity};
use crate::linalg::{dense_add, dense_scale, dense_sub, Bilinear, Matrix, Scalar, SparseVec, Subspace};
use crate::report::ViolationReport;
use crate::tca::{unit_dense, LieAlgebra, Tca};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebroidError {
    #[error("tensor `{0}` has inconsistent dimensions")]
    DimensionMismatch(&'static str),
    #[error("supplementary identities fail:\n{0}")]
    Supplementary(ViolationReport),
    #[error("structure does not descend to B/A∂A:\n{0}")]
    IllDefinedQuotient(ViolationReport),
    #[error("anchor must vanish")]
    NonzeroAnchor,
}

/// Unital commutative associative algebra by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    pub dim: usize,
    pub mult: Bilinear,
    pub unit: Vec<Scalar>,
}

impl CommAlgebra {
    /// `ℚe`.
    pub fn scalars() -> Self {
        let mut mult = Bilinear::zeros(1, 1, 1);
        mult.set(0, 0, 0, Scalar::one());
        CommAlgebra { dim: 1, mult, unit: vec![Scalar::one()] }
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.mult.apply(a, b)
    }

    pub fn e(&self, i: usize) -> Vec<Scalar> {
        unit_dense(self.dim, i)
    }

    pub fn check(&self) -> Result<ViolationReport, AlgebroidError> {
        let n = self.dim;
        if self.mult.dims() != (n, n, n) {
            return Err(AlgebroidError::DimensionMismatch("mult"));
        }
        if self.unit.len() != n {
            return Err(AlgebroidError::DimensionMismatch("unit"));
        }
        let mut r = ViolationReport::new();
        for i in 0..n {
            let ei = self.e(i);
            r.check("unit", &[i], dense_sub(&self.mul(&self.unit, &ei), &ei));
            for j in 0..n {
                r.check("commutativity", &[i, j], dense_sub(self.mult.basis(i, j), self.mult.basis(j, i)));
                for k in 0..n {
                    let l = self.mul(self.mult.basis(i, j), &self.e(k));
                    let rr = self.mul(&ei, self.mult.basis(j, k));
                    r.check("associativity", &[i, j, k], dense_sub(&l, &rr));
                }
            }
        }
        Ok(r)
    }

    pub fn direct_sum(&self, o: &CommAlgebra) -> CommAlgebra {
        let n = self.dim;
        let mut mult = Bilinear::zeros(n + o.dim, n + o.dim, n + o.dim);
        for ((i, j, k), x) in self.mult.entries() {
            mult.set(i, j, k, x.clone());
        }
        for ((i, j, k), x) in o.mult.entries() {
            mult.set(i + n, j + n, k + n, x.clone());
        }
        let unit = self.unit.iter().chain(&o.unit).cloned().collect();
        CommAlgebra { dim: n + o.dim, mult, unit }
    }
}

/// Which sign the action-associator identity carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// `a*(a'*v) − (aa')*v = π(v)(a)*∂a' + π(v)(a')*∂a`
    Standard,
    /// The same identity with the left-hand side negated.
    Negated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexAlgebroid {
    pub a: CommAlgebra,
    pub dim_b: usize,
    /// `a*v`
    pub act: Bilinear,
    /// `[u,v]`
    pub bracket: Bilinear,
    /// `π(u)(a)`
    pub pi: Bilinear,
    /// `⟨u,v⟩`
    pub pair: Bilinear,
    /// `∂ : A → B`, a `dim_b × dim A` matrix.
    pub partial: Matrix,
}

impl VertexAlgebroid {
    pub fn zero(a: CommAlgebra, dim_b: usize) -> Self {
        let da = a.dim;
        let mut act = Bilinear::zeros(da, dim_b, dim_b);
        for i in 0..da {
            for v in 0..dim_b {
                act.set(i, v, v, a.unit[i].clone());
            }
        }
        VertexAlgebroid {
            a,
            dim_b,
            act,
            bracket: Bilinear::zeros(dim_b, dim_b, dim_b),
            pi: Bilinear::zeros(dim_b, da, da),
            pair: Bilinear::zeros(dim_b, dim_b, da),
            partial: Matrix::zeros(dim_b, da),
        }
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim
    }

    pub fn check_dims(&self) -> Result<(), AlgebroidError> {
        let (da, db) = (self.a.dim, self.dim_b);
        let checks = [
            ("mult", self.a.mult.dims(), (da, da, da)),
            ("act", self.act.dims(), (da, db, db)),
            ("bracket", self.bracket.dims(), (db, db, db)),
            ("pi", self.pi.dims(), (db, da, da)),
            ("pair", self.pair.dims(), (db, db, da)),
        ];
        for (name, got, want) in checks {
            if got != want {
                return Err(AlgebroidError::DimensionMismatch(name));
            }
        }
        if (self.partial.rows(), self.partial.cols()) != (db, da) || self.a.unit.len() != da {
            return Err(AlgebroidError::DimensionMismatch("partial"));
        }
        Ok(())
    }

    fn eb(&self, i: usize) -> Vec<Scalar> {
        unit_dense(self.dim_b, i)
    }

    fn star(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.act.apply(a, v)
    }

    fn br(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.bracket.apply(u, v)
    }

    fn anchor(&self, u: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.pi.apply(u, a)
    }

    fn pr(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.pair.apply(u, v)
    }

    fn d(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.partial.apply(a)
    }

    /// All defining identities on basis elements.
    pub fn check(&self, sign: SignConvention) -> Result<ViolationReport, AlgebroidError> {
        self.check_dims()?;
        let (da, db) = (self.a.dim, self.dim_b);
        let mut r = ViolationReport::new();
        let ea = |i| self.a.e(i);
        let eb = |i| self.eb(i);
        let mul = |x: &[Scalar], y: &[Scalar]| self.a.mul(x, y);

        for a in 0..da {
            for a2 in 0..da {
                let aa = mul(&ea(a), &ea(a2));
                let lhs = self.d(&aa);
                let rhs = dense_add(&self.star(&ea(a), &self.d(&ea(a2))), &self.star(&ea(a2), &self.d(&ea(a))));
                r.check("partial-derivation", &[a, a2], dense_sub(&lhs, &rhs));
                for v in 0..db {
                    let lhs =
                        dense_sub(&self.star(&ea(a), &self.star(&ea(a2), &eb(v))), &self.star(&aa, &eb(v)));
                    let lhs = match sign {
                        SignConvention::Standard => lhs,
                        SignConvention::Negated => dense_scale(&-Scalar::one(), &lhs),
                    };
                    let t1 = self.star(&self.anchor(&eb(v), &ea(a)), &self.d(&ea(a2)));
                    let t2 = self.star(&self.anchor(&eb(v), &ea(a2)), &self.d(&ea(a)));
                    r.check("action-associator", &[a, a2, v], dense_sub(&lhs, &dense_add(&t1, &t2)));

                    let lhs = self.anchor(&self.star(&ea(a), &eb(v)), &ea(a2));
                    let rhs = mul(&ea(a), &self.anchor(&eb(v), &ea(a2)));
                    r.check("anchor-linearity", &[a, v, a2], dense_sub(&lhs, &rhs));

                    let lhs = self.anchor(&eb(v), &aa);
                    let rhs = dense_add(
                        &mul(&ea(a), &self.anchor(&eb(v), &ea(a2))),
                        &mul(&self.anchor(&eb(v), &ea(a)), &ea(a2)),
                    );
                    r.check("anchor-derivation", &[v, a, a2], dense_sub(&lhs, &rhs));

                    r.check("anchor-kills-partial", &[a, a2], self.anchor(&self.d(&ea(a)), &ea(a2)));
                }
            }
            for u in 0..db {
                for v in 0..db {
                    let lhs = self.br(&eb(u), &self.star(&ea(a), &eb(v)));
                    let rhs = dense_add(
                        &self.star(&self.anchor(&eb(u), &ea(a)), &eb(v)),
                        &self.star(&ea(a), &self.br(&eb(u), &eb(v))),
                    );
                    r.check("bracket-action", &[u, a, v], dense_sub(&lhs, &rhs));

                    let lhs = self.pr(&self.star(&ea(a), &eb(u)), &eb(v));
                    let rhs = dense_sub(
                        &mul(&ea(a), &self.pr(&eb(u), &eb(v))),
                        &self.anchor(&eb(u), &self.anchor(&eb(v), &ea(a))),
                    );
                    r.check("pairing-action", &[a, u, v], dense_sub(&lhs, &rhs));
                }
                let da_ = self.d(&ea(a));
                let lhs = self.br(&eb(u), &da_);
                let rhs = self.d(&self.anchor(&eb(u), &ea(a)));
                r.check("bracket-partial", &[u, a], dense_sub(&lhs, &rhs));
                let lhs = self.pr(&eb(u), &da_);
                r.check("pairing-partial", &[u, a], dense_sub(&lhs, &self.anchor(&eb(u), &ea(a))));
            }
        }
        for u in 0..db {
            r.check("unit-action", &[u], dense_sub(&self.star(&self.a.unit, &eb(u)), &eb(u)));
            for v in 0..db {
                let s = dense_add(&self.br(&eb(u), &eb(v)), &self.br(&eb(v), &eb(u)));
                r.check("bracket-symmetric", &[u, v], dense_sub(&s, &self.d(&self.pr(&eb(u), &eb(v)))));
                r.check("pairing-symmetry", &[u, v], dense_sub(&self.pr(&eb(u), &eb(v)), &self.pr(&eb(v), &eb(u))));
                let uv = self.br(&eb(u), &eb(v));
                for a in 0..da {
                    let lhs = self.anchor(&uv, &ea(a));
                    let rhs = dense_sub(
                        &self.anchor(&eb(u), &self.anchor(&eb(v), &ea(a))),
                        &self.anchor(&eb(v), &self.anchor(&eb(u), &ea(a))),
                    );
                    r.check("anchor-hom", &[u, v, a], dense_sub(&lhs, &rhs));
                }
                for w in 0..db {
                    let lhs = self.br(&eb(u), &self.br(&eb(v), &eb(w)));
                    let rhs = dense_add(&self.br(&uv, &eb(w)), &self.br(&eb(v), &self.br(&eb(u), &eb(w))));
                    r.check("leibniz", &[u, v, w], dense_sub(&lhs, &rhs));

                    let lhs = self.anchor(&eb(u), &self.pr(&eb(v), &eb(w)));
                    let rhs = dense_add(
                        &self.pr(&self.br(&eb(u), &eb(v)), &eb(w)),
                        &self.pr(&eb(v), &self.br(&eb(u), &eb(w))),
                    );
                    r.check("anchor-pairing", &[u, v, w], dense_sub(&lhs, &rhs));
                }
            }
        }
        Ok(r)
    }

    /// The identities relating the `(−1)`-products to the Tca products.
    pub fn check_supplementary(&self, t: &Tca) -> ViolationReport {
        let (da, db) = (self.a.dim, self.dim_b);
        let ea = |i| self.a.e(i);
        let eb = |i| self.eb(i);
        let mul = |x: &[Scalar], y: &[Scalar]| self.a.mul(x, y);
        let u0a = |u: &[Scalar], a: &[Scalar]| t.t0_ba.apply(u, a);
        let a0u = |a: &[Scalar], u: &[Scalar]| t.t0_ab.apply(a, u);
        let d = |a: &[Scalar]| t.partial.apply(a);
        let mut r = ViolationReport::new();
        for a in 0..da {
            for a2 in 0..da {
                let aa = mul(&ea(a), &ea(a2));
                let lhs = d(&aa);
                let rhs = dense_add(&self.star(&ea(a), &d(&ea(a2))), &self.star(&ea(a2), &d(&ea(a))));
                r.check("supp-partial-derivation", &[a, a2], dense_sub(&lhs, &rhs));
                for u in 0..db {
                    let lhs = dense_sub(&self.star(&ea(a), &self.star(&ea(a2), &eb(u))), &self.star(&aa, &eb(u)));
                    let rhs = dense_add(
                        &self.star(&u0a(&eb(u), &ea(a)), &d(&ea(a2))),
                        &self.star(&u0a(&eb(u), &ea(a2)), &d(&ea(a))),
                    );
                    r.check("supp-associator", &[a, a2, u], dense_sub(&lhs, &rhs));

                    let lhs = u0a(&eb(u), &aa);
                    let rhs =
                        dense_add(&mul(&ea(a), &u0a(&eb(u), &ea(a2))), &mul(&u0a(&eb(u), &ea(a)), &ea(a2)));
                    r.check("supp-anchor-derivation", &[u, a, a2], dense_sub(&lhs, &rhs));

                    let lhs = a0u(&ea(a), &self.star(&ea(a2), &eb(u)));
                    let rhs = mul(&ea(a2), &a0u(&ea(a), &eb(u)));
                    r.check("supp-anchor-linearity", &[a, a2, u], dense_sub(&lhs, &rhs));
                }
            }
            for u in 0..db {
                for v in 0..db {
                    let lhs = dense_sub(
                        &t.t0_bb.apply(&eb(u), &self.star(&ea(a), &eb(v))),
                        &self.star(&ea(a), &t.t0_bb.apply(&eb(u), &eb(v))),
                    );
                    let rhs = self.star(&u0a(&eb(u), &ea(a)), &eb(v));
                    r.check("supp-bracket-action", &[u, a, v], dense_sub(&lhs, &rhs));

                    let lhs = t.t1_bb.apply(&self.star(&ea(a), &eb(u)), &eb(v));
                    let rhs = dense_sub(
                        &mul(&ea(a), &t.t1_bb.apply(&eb(u), &eb(v))),
                        &u0a(&eb(u), &u0a(&eb(v), &ea(a))),
                    );
                    r.check("supp-pairing-action", &[a, u, v], dense_sub(&lhs, &rhs));
                }
            }
        }
        r
    }

    /// Tca on `A ⊕ B` carrying the same 0- and 1-products.
    pub fn to_tca(&self) -> Result<Tca, AlgebroidError> {
        self.check_dims()?;
        let (da, db) = (self.a.dim, self.dim_b);
        let mut t = Tca::zero(da, db);
        t.partial = self.partial.clone();
        t.t0_bb = self.bracket.clone();
        t.t1_bb = self.pair.clone();
        t.t0_ba = self.pi.clone();
        for ((u, a, k), x) in self.pi.entries() {
            t.t0_ab.set(a, u, k, -x.clone());
        }
        let mut rep = self.check_supplementary(&t);
        rep.extend(t.check().map_err(|_| AlgebroidError::DimensionMismatch("tca"))?);
        if rep.is_empty() {
            Ok(t)
        } else {
            Err(AlgebroidError::Supplementary(rep))
        }
    }

    pub fn direct_sum(&self, o: &VertexAlgebroid) -> VertexAlgebroid {
        let (a0, b0) = (self.a.dim, self.dim_b);
        let a = self.a.direct_sum(&o.a);
        let mut v = VertexAlgebroid::zero(a, b0 + o.dim_b);
        v.act = Bilinear::zeros(v.a.dim, v.dim_b, v.dim_b);
        for (src, sa, sb) in [(self, 0, 0), (o, a0, b0)] {
            for ((i, j, k), x) in src.act.entries() {
                v.act.set(i + sa, j + sb, k + sb, x.clone());
            }
            for ((i, j, k), x) in src.bracket.entries() {
                v.bracket.set(i + sb, j + sb, k + sb, x.clone());
            }
            for ((i, j, k), x) in src.pi.entries() {
                v.pi.set(i + sb, j + sa, k + sa, x.clone());
            }
            for ((i, j, k), x) in src.pair.entries() {
                v.pair.set(i + sb, j + sb, k + sa, x.clone());
            }
            for r in 0..src.dim_b {
                for (c, x) in src.partial.row(r) {
                    v.partial.set(r + sb, c + sa, x.clone());
                }
            }
        }
        v
    }

    /// `A∂A = span{a * ∂a'}` inside `B`.
    pub fn a_partial_a(&self) -> Subspace {
        let da = self.a.dim;
        let mut s = Subspace::zero(self.dim_b);
        for a in 0..da {
            for a2 in 0..da {
                s.insert(sparse(&self.star(&self.a.e(a), &self.d(&self.a.e(a2)))));
            }
        }
        s
    }
}

fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Lie A-algebroid `g` with A-action and anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebroid {
    pub a: CommAlgebra,
    pub dim_g: usize,
    pub bracket: Bilinear,
    /// `a·u`
    pub act: Bilinear,
    /// `u(a)`
    pub anchor: Bilinear,
}

impl LieAlgebroid {
    pub fn check(&self) -> ViolationReport {
        let (da, dg) = (self.a.dim, self.dim_g);
        let mut r = LieAlgebra::new(self.bracket.clone()).check();
        let eg = |i| unit_dense(dg, i);
        let ea = |i| self.a.e(i);
        for u in 0..dg {
            r.check("unit-action", &[u], dense_sub(&self.act.apply(&self.a.unit, &eg(u)), &eg(u)));
            for a in 0..da {
                for a2 in 0..da {
                    let l = self.act.apply(&ea(a), &self.act.apply(&ea(a2), &eg(u)));
                    let rr = self.act.apply(&self.a.mul(&ea(a), &ea(a2)), &eg(u));
                    r.check("action-associativity", &[a, a2, u], dense_sub(&l, &rr));

                    let l = self.anchor.apply(&eg(u), &self.a.mul(&ea(a), &ea(a2)));
                    let rr = dense_add(
                        &self.a.mul(&ea(a), &self.anchor.apply(&eg(u), &ea(a2))),
                        &self.a.mul(&self.anchor.apply(&eg(u), &ea(a)), &ea(a2)),
                    );
                    r.check("anchor-derivation", &[u, a, a2], dense_sub(&l, &rr));

                    // a(ub) = (au)b
                    let l = self.a.mul(&ea(a), &self.anchor.apply(&eg(u), &ea(a2)));
                    let rr = self.anchor.apply(&self.act.apply(&ea(a), &eg(u)), &ea(a2));
                    r.check("anchor-linearity", &[a, u, a2], dense_sub(&l, &rr));
                }
                for v in 0..dg {
                    // [u, av] = a[u,v] + (ua)v
                    let l = self.bracket.apply(&eg(u), &self.act.apply(&ea(a), &eg(v)));
                    let rr = dense_add(
                        &self.act.apply(&ea(a), self.bracket.basis(u, v)),
                        &self.act.apply(&self.anchor.apply(&eg(u), &ea(a)), &eg(v)),
                    );
                    r.check("bracket-action", &[u, a, v], dense_sub(&l, &rr));

                    let l = self.anchor.apply(self.bracket.basis(u, v), &ea(a));
                    let rr = dense_sub(
                        &self.anchor.apply(&eg(u), self.anchor.basis(v, a)),
                        &self.anchor.apply(&eg(v), self.anchor.basis(u, a)),
                    );
                    r.check("anchor-hom", &[u, v, a], dense_sub(&l, &rr));
                }
            }
        }
        r
    }

    /// The vertex algebroid with zero pairing and `∂`; requires zero anchor.
    pub fn to_vertex_algebroid(&self) -> Result<VertexAlgebroid, AlgebroidError> {
        if !self.anchor.is_zero() {
            return Err(AlgebroidError::NonzeroAnchor);
        }
        let mut v = VertexAlgebroid::zero(self.a.clone(), self.dim_g);
        v.act = self.act.clone();
        v.bracket = self.bracket.clone();
        Ok(v)
    }

    /// The canonical module `A` with `g` acting through the anchor.
    pub fn base_module(&self) -> LaModule {
        let da = self.a.dim;
        let mut a_act = Bilinear::zeros(da, da, da);
        for ((i, j, k), x) in self.a.mult.entries() {
            a_act.set(i, j, k, x.clone());
        }
        LaModule { dim: da, g_act: self.anchor.clone(), a_act }
    }
}

/// `B/A∂A` with the induced structure, plus the projection `B → B/A∂A`.
pub fn lie_algebroid_quotient(v: &VertexAlgebroid) -> Result<(LieAlgebroid, Matrix), AlgebroidError> {
    v.check_dims()?;
    let sub = v.a_partial_a();
    let free = sub.free_columns();
    let (da, dg) = (v.a.dim, free.len());
    let proj = |x: &[Scalar]| sub.quotient_coords(&sparse(x));
    let lift = |i: usize| v.eb(free[i]);
    let mut bracket = Bilinear::zeros(dg, dg, dg);
    let mut act = Bilinear::zeros(da, dg, dg);
    let mut anchor = Bilinear::zeros(dg, da, da);
    for i in 0..dg {
        for j in 0..dg {
            bracket.set_basis(i, j, &proj(&v.br(&lift(i), &lift(j))));
        }
        for a in 0..da {
            act.set_basis(a, i, &proj(&v.star(&v.a.e(a), &lift(i))));
            anchor.set_basis(i, a, &v.anchor(&lift(i), &v.a.e(a)));
        }
    }
    let mut bad = ViolationReport::new();
    for (k, w) in sub.basis_rows().iter().enumerate() {
        let w = crate::linalg::Matrix::from_sparse_rows(v.dim_b, vec![w.clone()]).to_dense().remove(0);
        for u in 0..v.dim_b {
            bad.check("ideal-left", &[k, u], proj(&v.br(&w, &v.eb(u))));
            bad.check("ideal-right", &[u, k], proj(&v.br(&v.eb(u), &w)));
        }
        for a in 0..da {
            bad.check("ideal-action", &[a, k], proj(&v.star(&v.a.e(a), &w)));
            bad.check("ideal-anchor", &[k, a], v.anchor(&w, &v.a.e(a)));
        }
    }
    if !bad.is_empty() {
        return Err(AlgebroidError::IllDefinedQuotient(bad));
    }
    let mut p = Matrix::zeros(dg, v.dim_b);
    for b in 0..v.dim_b {
        for (i, x) in proj(&v.eb(b)).into_iter().enumerate() {
            p.set(i, b, x);
        }
    }
    Ok((LieAlgebroid { a: v.a.clone(), dim_g: dg, bracket, act, anchor }, p))
}

/// Module for a Lie A-algebroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaModule {
    pub dim: usize,
    /// `u·w`
    pub g_act: Bilinear,
    /// `a·w`
    pub a_act: Bilinear,
}

impl LaModule {
    pub fn g_op(&self, u: usize) -> Matrix {
        op_matrix(&self.g_act, u, self.dim)
    }

    pub fn a_op(&self, a: usize) -> Matrix {
        op_matrix(&self.a_act, a, self.dim)
    }

    /// All action operators, `A` first.
    pub fn operators(&self) -> Vec<Matrix> {
        let (da, dg, _) = (self.a_act.dims().0, self.g_act.dims().0, ());
        (0..da).map(|a| self.a_op(a)).chain((0..dg).map(|u| self.g_op(u))).collect()
    }

    pub fn direct_sum(&self, o: &LaModule) -> LaModule {
        let n = self.dim;
        let (dg, da) = (self.g_act.dims().0, self.a_act.dims().0);
        let mut g_act = Bilinear::zeros(dg, n + o.dim, n + o.dim);
        let mut a_act = Bilinear::zeros(da, n + o.dim, n + o.dim);
        for (src, s) in [(self, 0), (o, n)] {
            for ((i, j, k), x) in src.g_act.entries() {
                g_act.set(i, j + s, k + s, x.clone());
            }
            for ((i, j, k), x) in src.a_act.entries() {
                a_act.set(i, j + s, k + s, x.clone());
            }
        }
        LaModule { dim: n + o.dim, g_act, a_act }
    }
}

/// Matrix of `w ↦ x_i · w` for a tensor `X × W → W`.
pub(crate) fn op_matrix(t: &Bilinear, i: usize, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for w in 0..n {
        for (k, x) in t.basis(i, w).iter().enumerate() {
            if !x.is_zero() {
                m.set(k, w, x.clone());
            }
        }
    }
    m
}

pub fn check_la_module(g: &LieAlgebroid, m: &LaModule) -> Result<ViolationReport, AlgebroidError> {
    let (da, dg, n) = (g.a.dim, g.dim_g, m.dim);
    if m.g_act.dims() != (dg, n, n) {
        return Err(AlgebroidError::DimensionMismatch("gact"));
    }
    if m.a_act.dims() != (da, n, n) {
        return Err(AlgebroidError::DimensionMismatch("aact"));
    }
    let mut r = ViolationReport::new();
    let ew = |i| unit_dense(n, i);
    let aw = |a: &[Scalar], w: &[Scalar]| m.a_act.apply(a, w);
    let uw = |u: &[Scalar], w: &[Scalar]| m.g_act.apply(u, w);
    let eg = |i| unit_dense(dg, i);
    for w in 0..n {
        r.check("unit", &[w], dense_sub(&aw(&g.a.unit, &ew(w)), &ew(w)));
        for a in 0..da {
            for a2 in 0..da {
                let l = aw(&g.a.e(a), &aw(&g.a.e(a2), &ew(w)));
                let rr = aw(&g.a.mul(&g.a.e(a), &g.a.e(a2)), &ew(w));
                r.check("a-associativity", &[a, a2, w], dense_sub(&l, &rr));
            }
        }
        for u in 0..dg {
            for v in 0..dg {
                let l = uw(g.bracket.basis(u, v), &ew(w));
                let rr = dense_sub(&uw(&eg(u), &uw(&eg(v), &ew(w))), &uw(&eg(v), &uw(&eg(u), &ew(w))));
                r.check("g-representation", &[u, v, w], dense_sub(&l, &rr));
            }
            for a in 0..da {
                let ea = g.a.e(a);
                // a(uw) = (au)w
                let l = aw(&ea, &uw(&eg(u), &ew(w)));
                let rr = uw(&g.act.apply(&ea, &eg(u)), &ew(w));
                r.check("a-linearity", &[a, u, w], dense_sub(&l, &rr));
                // u(aw) − a(uw) = (ua)w
                let l = dense_sub(&uw(&eg(u), &aw(&ea, &ew(w))), &aw(&ea, &uw(&eg(u), &ew(w))));
                let rr = aw(&g.anchor.apply(&eg(u), &ea), &ew(w));
                r.check("mixed-commutator", &[u, a, w], dense_sub(&l, &rr));
            }
        }
    }
    Ok(r)
}

/// Whether `m` has no proper nonzero subspace stable under every operator.
pub fn simple_la_modules_check(m: &LaModule) -> Simplicity {
    irreducible::simplicity(&m.operators(), m.dim)
}
