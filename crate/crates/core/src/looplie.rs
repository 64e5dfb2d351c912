//! Graded loop Lie algebra `L = L(A ⊕ B)/∂̂L(A)` of a 1-truncated conformal
//! algebra `A ⊕ B`.
//!
//! A raw element of degree `m` is a pair `(a, b)` standing for
//! `a⊗t^{-m-1} + b⊗t^{-m}`. Normal forms use `B` coordinates at `m ≠ 0` and
//! `A` followed by a complement of `∂A` in `B` at `m = 0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{dense_add, dense_is_zero, dense_scale, dense_sub, kernel, q, Bilinear, Matrix, Scalar};
use crate::linalg::{SparseVec, Subspace};
use crate::report::ViolationReport;
use crate::tca::{lie_quotient, unit_dense, Elt, LieAlgebra, Tca, TcaError};

#[derive(Debug, Error)]
pub enum LoopError {
    #[error(transparent)]
    Tca(#[from] TcaError),
    #[error("input is not a 1-truncated conformal algebra:\n{0}")]
    Invalid(ViolationReport),
    #[error("loop algebra verification failed:\n{0}")]
    Verification(ViolationReport),
}

/// `a⊗t^{-m-1} + b⊗t^{-m}` in degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawLoopElement {
    pub degree: i64,
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
}

impl RawLoopElement {
    pub fn zero(c: &Tca, degree: i64) -> Self {
        RawLoopElement { degree, a: vec![Scalar::zero(); c.dim0], b: vec![Scalar::zero(); c.dim1] }
    }

    /// `a⊗tᵏ`, of degree `-k-1`.
    pub fn a_mode(c: &Tca, a: &[Scalar], k: i64) -> Self {
        RawLoopElement { degree: -k - 1, a: a.to_vec(), b: vec![Scalar::zero(); c.dim1] }
    }

    /// `b⊗tᵏ`, of degree `-k`.
    pub fn b_mode(c: &Tca, b: &[Scalar], k: i64) -> Self {
        RawLoopElement { degree: -k, a: vec![Scalar::zero(); c.dim0], b: b.to_vec() }
    }

    /// Mode `k` of basis element `i` of `A ⊕ B` (`A` first).
    pub fn basis_mode(c: &Tca, i: usize, k: i64) -> Self {
        if i < c.dim0 {
            Self::a_mode(c, &unit_dense(c.dim0, i), k)
        } else {
            Self::b_mode(c, &unit_dense(c.dim1, i - c.dim0), k)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "adding loop elements of different degree");
        RawLoopElement { degree: self.degree, a: dense_add(&self.a, &o.a), b: dense_add(&self.b, &o.b) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RawLoopElement { degree: self.degree, a: dense_scale(c, &self.a), b: dense_scale(c, &self.b) }
    }

    pub fn is_zero(&self) -> bool {
        dense_is_zero(&self.a) && dense_is_zero(&self.b)
    }

    /// Coordinates in `A ⊕ B`, `A` first.
    pub fn coords(&self) -> SparseVec {
        self.a.iter().chain(&self.b).enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
    }
}

/// `∂̂(a⊗tⁿ) = ∂a⊗tⁿ + n·a⊗tⁿ⁻¹`, of degree `-n`.
pub fn hat_partial(c: &Tca, a: &[Scalar], n: i64) -> RawLoopElement {
    RawLoopElement { degree: -n, a: dense_scale(&q(n), a), b: c.partial_of(a) }
}

/// The bracket on `L(A ⊕ B)` before passing to the quotient.
pub fn raw_bracket(c: &Tca, x: &RawLoopElement, y: &RawLoopElement) -> RawLoopElement {
    let m = x.degree;
    let mut a = dense_add(&c.t0_ab.apply(&x.a, &y.b), &c.t0_ba.apply(&x.b, &y.a));
    a = dense_add(&a, &dense_scale(&q(-m), &c.t1_bb.apply(&x.b, &y.b)));
    RawLoopElement { degree: m + y.degree, a, b: c.t0_bb.apply(&x.b, &y.b) }
}

/// `(∂̂L(A))` in degree `d`, inside raw coordinates `A ⊕ B`.
pub fn hat_partial_image(c: &Tca, degree: i64) -> Subspace {
    Subspace::from_rows(
        c.total_dim(),
        (0..c.dim0).map(|i| hat_partial(c, &unit_dense(c.dim0, i), -degree).coords()),
    )
}

/// `[D, x]` where `D` acts as `d/dt` up to the degree shift:
/// `a⊗t^{-m-1} ↦ (m+1)·a⊗t^{-m-2}`, `b⊗t^{-m} ↦ m·b⊗t^{-m-1}`.
pub fn raw_d(x: &RawLoopElement) -> RawLoopElement {
    let m = x.degree;
    RawLoopElement { degree: m + 1, a: dense_scale(&q(m + 1), &x.a), b: dense_scale(&q(m), &x.b) }
}

fn elt(c: &Tca, i: usize) -> Elt {
    c.basis(i)
}

/// The six relations under which `∂̂L(A)` is a two-sided ideal, on basis
/// elements. Accepts tensors that violate every other axiom.
pub fn check_ideal_conditions(c: &Tca) -> Result<ViolationReport, TcaError> {
    c.check_dims()?;
    let mut r = ViolationReport::new();
    let (d0, n) = (c.dim0, c.total_dim());
    for a in 0..d0 {
        let da = c.d(&elt(c, a));
        for a2 in 0..d0 {
            let da2 = c.d(&elt(c, a2));
            r.check("ideal-a0-da", &[a, a2], c.prod(0, &elt(c, a), &da2).concat());
            r.check("ideal-da0-a", &[a, a2], c.prod(0, &da, &elt(c, a2)).concat());
        }
        for u in d0..n {
            let bu = elt(c, u);
            let ea = elt(c, a);
            r.check("ideal-da0-b", &[a, u], c.prod(0, &da, &bu).concat());
            r.check("ideal-da1-b", &[a, u], c.prod(1, &da, &bu).add(&c.prod(0, &ea, &bu)).concat());
            let lhs = c.prod(0, &bu, &da);
            let rhs = c.d(&c.prod(0, &bu, &ea));
            r.check("ideal-b0-da", &[u, a], lhs.sub(&rhs).concat());
            let lhs = c.prod(1, &bu, &da);
            let rhs = c.prod(0, &bu, &ea);
            r.check("ideal-b1-da", &[u, a], lhs.sub(&rhs).concat());
        }
    }
    Ok(r)
}

/// The three relations under which the quotient bracket is skew-symmetric.
pub fn check_skew_conditions(c: &Tca) -> Result<ViolationReport, TcaError> {
    c.check_dims()?;
    let mut r = ViolationReport::new();
    let (d0, n) = (c.dim0, c.total_dim());
    for u in d0..n {
        let bu = elt(c, u);
        for a in 0..d0 {
            let ea = elt(c, a);
            r.check("skew-ab", &[a, u], c.prod(0, &ea, &bu).add(&c.prod(0, &bu, &ea)).concat());
        }
        for v in d0..n {
            let bv = elt(c, v);
            r.check("skew-b1", &[u, v], c.prod(1, &bu, &bv).sub(&c.prod(1, &bv, &bu)).concat());
            let lhs = c.prod(0, &bu, &bv).add(&c.prod(0, &bv, &bu));
            r.check("skew-b0", &[u, v], lhs.sub(&c.d(&c.prod(1, &bv, &bu))).concat());
        }
    }
    Ok(r)
}

/// The family implied by the others together with the ideal and skew relations.
pub const REDUNDANT_JACOBI: &str = "jacobi-u1-v0-w";

/// The four relations under which the quotient is a Lie algebra.
pub fn check_jacobi_conditions(c: &Tca) -> Result<ViolationReport, TcaError> {
    c.check_dims()?;
    let mut r = ViolationReport::new();
    let (d0, n) = (c.dim0, c.total_dim());
    let p = |i, x: &Elt, y: &Elt| c.prod(i, x, y);
    for u in d0..n {
        let bu = elt(c, u);
        for v in d0..n {
            let bv = elt(c, v);
            for a in 0..d0 {
                let ea = elt(c, a);
                let res = p(0, &ea, &p(0, &bu, &bv)).sub(&p(0, &bu, &p(0, &ea, &bv))).sub(&p(0, &p(0, &ea, &bu), &bv));
                r.check("jacobi-a-u-v", &[a, u, v], res.concat());
            }
            for w in d0..n {
                let bw = elt(c, w);
                let uv0 = p(0, &bu, &bv);
                let res = p(0, &bu, &p(0, &bv, &bw)).sub(&p(0, &bv, &p(0, &bu, &bw))).sub(&p(0, &uv0, &bw));
                r.check("jacobi-u0-v0-w", &[u, v, w], res.concat());
                let res = p(0, &bu, &p(1, &bv, &bw)).sub(&p(1, &bv, &p(0, &bu, &bw))).sub(&p(1, &uv0, &bw));
                r.check("jacobi-u0-v1-w", &[u, v, w], res.concat());
                let res = p(1, &bu, &p(0, &bv, &bw))
                    .sub(&p(0, &bv, &p(1, &bu, &bw)))
                    .sub(&p(1, &uv0, &bw))
                    .sub(&p(0, &p(1, &bu, &bv), &bw));
                r.check(REDUNDANT_JACOBI, &[u, v, w], res.concat());
            }
        }
    }
    Ok(r)
}

/// All loop-level relations together.
pub fn check_loop_conditions(c: &Tca) -> Result<ViolationReport, TcaError> {
    let mut r = check_ideal_conditions(c)?;
    r.extend(check_skew_conditions(c)?);
    r.extend(check_jacobi_conditions(c)?);
    Ok(r)
}

/// Bracket-shape family (as reported by the membership tests) that a
/// relation id belongs to.
pub fn condition_family(id: &str) -> Option<&'static str> {
    Some(match id {
        "ideal-a0-da" => "ideal-left-a",
        "ideal-b0-da" | "ideal-b1-da" => "ideal-left-b",
        "ideal-da0-a" => "ideal-right-a",
        "ideal-da0-b" | "ideal-da1-b" => "ideal-right-b",
        "skew-ab" => "skew-ab",
        "skew-b1" | "skew-b0" => "skew-bb",
        "jacobi-a-u-v" => "jacobi-abb",
        "jacobi-u0-v0-w" | "jacobi-u0-v1-w" | "jacobi-u1-v0-w" => "jacobi-bbb",
        _ => return None,
    })
}

/// Exponents swept by the membership tests. Every relation is detected at
/// some combination of exponents in this range.
pub const MEMBERSHIP_EXPONENTS: std::ops::RangeInclusive<i64> = -2..=2;

struct Membership<'a> {
    c: &'a Tca,
    images: HashMap<i64, Subspace>,
}

impl<'a> Membership<'a> {
    fn new(c: &'a Tca) -> Self {
        Membership { c, images: HashMap::new() }
    }

    /// Residual of `x` modulo `∂̂L(A)`.
    fn residual(&mut self, x: &RawLoopElement) -> Vec<Scalar> {
        let c = self.c;
        let img = self.images.entry(x.degree).or_insert_with(|| hat_partial_image(c, x.degree));
        let red = img.reduce(&x.coords());
        let mut out = vec![Scalar::zero(); c.total_dim()];
        for (i, v) in red {
            out[i] = v;
        }
        out
    }

    fn mode(&self, i: usize, k: i64) -> RawLoopElement {
        RawLoopElement::basis_mode(self.c, i, k)
    }

    fn br(&self, x: &RawLoopElement, y: &RawLoopElement) -> RawLoopElement {
        raw_bracket(self.c, x, y)
    }
}

fn first_failure<F>(r: &mut ViolationReport, id: &'static str, idx: &[usize], mut f: F)
where
    F: FnMut(i64, i64, i64) -> Vec<Scalar>,
{
    for m in MEMBERSHIP_EXPONENTS {
        for n in MEMBERSHIP_EXPONENTS {
            for k in MEMBERSHIP_EXPONENTS {
                let res = f(m, n, k);
                if !dense_is_zero(&res) {
                    let mut ix: Vec<i64> = idx.iter().map(|&i| i as i64).collect();
                    ix.extend([m, n, k]);
                    r.push(id, ix, res);
                    return;
                }
            }
        }
    }
}

/// Tests directly whether `[x, ∂̂g]` and `[∂̂g, x]` lie in `∂̂L(A)` for basis
/// `x ∈ A ⊕ B`, `g ∈ A`, over [`MEMBERSHIP_EXPONENTS`].
pub fn membership_ideal(c: &Tca) -> Result<ViolationReport, TcaError> {
    c.check_dims()?;
    let mut mem = Membership::new(c);
    let mut r = ViolationReport::new();
    for x in 0..c.total_dim() {
        let (left, right) = if x < c.dim0 { ("ideal-left-a", "ideal-right-a") } else { ("ideal-left-b", "ideal-right-b") };
        for g in 0..c.dim0 {
            let eg = unit_dense(c.dim0, g);
            first_failure(&mut r, left, &[x, g], |m, n, k| {
                if k != 0 {
                    return vec![];
                }
                let br = mem.br(&mem.mode(x, m), &hat_partial(c, &eg, n));
                mem.residual(&br)
            });
            first_failure(&mut r, right, &[x, g], |m, n, k| {
                if k != 0 {
                    return vec![];
                }
                let br = mem.br(&hat_partial(c, &eg, n), &mem.mode(x, m));
                mem.residual(&br)
            });
        }
    }
    Ok(r)
}

/// Tests directly whether `[x, y] + [y, x] ∈ ∂̂L(A)` on basis modes.
pub fn membership_skew(c: &Tca) -> Result<ViolationReport, TcaError> {
    c.check_dims()?;
    let mut mem = Membership::new(c);
    let mut r = ViolationReport::new();
    let (d0, n) = (c.dim0, c.total_dim());
    for x in 0..n {
        for y in d0..n {
            let id = if x < d0 { "skew-ab" } else { "skew-bb" };
            first_failure(&mut r, id, &[x, y], |m, nn, k| {
                if k != 0 {
                    return vec![];
                }
                let (xm, yn) = (mem.mode(x, m), mem.mode(y, nn));
                let s = mem.br(&xm, &yn).add(&mem.br(&yn, &xm));
                mem.residual(&s)
            });
        }
    }
    Ok(r)
}

/// Tests directly whether the Jacobiator of basis modes of shapes
/// `A × B × B` and `B × B × B` lies in `∂̂L(A)`.
pub fn membership_jacobi(c: &Tca) -> Result<ViolationReport, TcaError> {
    c.check_dims()?;
    let mut mem = Membership::new(c);
    let mut r = ViolationReport::new();
    let (d0, n) = (c.dim0, c.total_dim());
    for x in 0..n {
        let id = if x < d0 { "jacobi-abb" } else { "jacobi-bbb" };
        for y in d0..n {
            for z in d0..n {
                first_failure(&mut r, id, &[x, y, z], |m, nn, k| {
                    let (u, v, w) = (mem.mode(x, m), mem.mode(y, nn), mem.mode(z, k));
                    let t1 = mem.br(&u, &mem.br(&v, &w));
                    let t2 = mem.br(&v, &mem.br(&u, &w));
                    let t3 = mem.br(&mem.br(&u, &v), &w);
                    mem.residual(&t1.sub(&t2).sub(&t3))
                });
            }
        }
    }
    Ok(r)
}

/// All three membership tests together.
pub fn membership_conditions(c: &Tca) -> Result<ViolationReport, TcaError> {
    let mut r = membership_ideal(c)?;
    r.extend(membership_skew(c)?);
    r.extend(membership_jacobi(c)?);
    Ok(r)
}

/// Element of `L₍ₘ₎` in normal-form coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalLoopElement {
    pub degree: i64,
    pub coords: Vec<Scalar>,
}

impl NormalLoopElement {
    pub fn is_zero(&self) -> bool {
        dense_is_zero(&self.coords)
    }

    pub fn sparse(&self) -> SparseVec {
        self.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
    }
}

type TableKey = (i64, usize, i64, usize);

/// `L` with brackets of basis elements memoised. The window bounds the
/// degrees swept by [`WindowedLieAlgebra::verify`]; brackets at any degree
/// can be computed.
pub struct WindowedLieAlgebra {
    tca: Tca,
    window: i64,
    boundary: Subspace,
    free: Vec<usize>,
    table: Mutex<HashMap<TableKey, SparseVec>>,
}

impl fmt::Debug for WindowedLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WindowedLieAlgebra").field("tca", &self.tca).field("window", &self.window).finish()
    }
}

impl WindowedLieAlgebra {
    /// Builds without checking any axiom.
    pub fn new(c: &Tca, window: i64) -> Result<Self, LoopError> {
        c.check_dims()?;
        let boundary = c.boundary();
        let free = boundary.free_columns();
        Ok(WindowedLieAlgebra { tca: c.clone(), window, boundary, free, table: Mutex::new(HashMap::new()) })
    }

    pub fn tca(&self) -> &Tca {
        &self.tca
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// Columns of `B` whose unit vectors complement `∂A`.
    pub fn complement(&self) -> &[usize] {
        &self.free
    }

    pub fn dim(&self, m: i64) -> usize {
        if m == 0 {
            self.tca.dim0 + self.free.len()
        } else {
            self.tca.dim1
        }
    }

    pub fn normal_form(&self, x: &RawLoopElement) -> NormalLoopElement {
        let m = x.degree;
        if m != 0 {
            let fold = dense_scale(&Scalar::new(1.into(), m.into()), &self.tca.partial_of(&x.a));
            return NormalLoopElement { degree: m, coords: dense_add(&x.b, &fold) };
        }
        let b: SparseVec = x.b.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        let mut coords = x.a.clone();
        coords.extend(self.boundary.quotient_coords(&b));
        NormalLoopElement { degree: 0, coords }
    }

    pub fn lift(&self, x: &NormalLoopElement) -> RawLoopElement {
        let c = &self.tca;
        if x.degree != 0 {
            return RawLoopElement { degree: x.degree, a: vec![Scalar::zero(); c.dim0], b: x.coords.clone() };
        }
        let mut b = vec![Scalar::zero(); c.dim1];
        for (k, &f) in self.free.iter().enumerate() {
            b[f] = x.coords[c.dim0 + k].clone();
        }
        RawLoopElement { degree: 0, a: x.coords[..c.dim0].to_vec(), b }
    }

    pub fn basis(&self, m: i64, i: usize) -> NormalLoopElement {
        NormalLoopElement { degree: m, coords: unit_dense(self.dim(m), i) }
    }

    pub fn basis_raw(&self, m: i64, i: usize) -> RawLoopElement {
        self.lift(&self.basis(m, i))
    }

    /// Normal form of `u⊗tᵏ` for basis element `i` of `A ⊕ B` (`A` first).
    pub fn mode(&self, i: usize, k: i64) -> NormalLoopElement {
        self.normal_form(&RawLoopElement::basis_mode(&self.tca, i, k))
    }

    /// Nonzero homogeneous parts of `u⊗tᵏ` for `u ∈ A ⊕ B`.
    pub fn mode_elt(&self, u: &Elt, k: i64) -> Vec<NormalLoopElement> {
        let c = &self.tca;
        let a = self.normal_form(&RawLoopElement::a_mode(c, &u.c0, k));
        let b = self.normal_form(&RawLoopElement::b_mode(c, &u.c1, k));
        [a, b].into_iter().filter(|x| !x.is_zero()).collect()
    }

    /// `[x_i, y_j]` for basis elements of degrees `m`, `n`.
    pub fn bracket_basis(&self, m: i64, i: usize, n: i64, j: usize) -> SparseVec {
        let key = (m, i, n, j);
        if let Some(v) = self.table.lock().expect("bracket table").get(&key) {
            return v.clone();
        }
        let raw = raw_bracket(&self.tca, &self.basis_raw(m, i), &self.basis_raw(n, j));
        let v = self.normal_form(&raw).sparse();
        self.table.lock().expect("bracket table").insert(key, v.clone());
        v
    }

    pub fn bracket_sparse(&self, m: i64, x: &SparseVec, n: i64, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, xi) in x {
            for (j, yj) in y {
                let c = xi * yj;
                for (k, z) in self.bracket_basis(m, *i, n, *j) {
                    *out.entry(k).or_insert_with(Scalar::zero) += &c * z;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn bracket(&self, x: &NormalLoopElement, y: &NormalLoopElement) -> NormalLoopElement {
        let d = x.degree + y.degree;
        let s = self.bracket_sparse(x.degree, &x.sparse(), y.degree, &y.sparse());
        let mut coords = vec![Scalar::zero(); self.dim(d)];
        for (k, v) in s {
            coords[k] = v;
        }
        NormalLoopElement { degree: d, coords }
    }

    /// `[D, x]` for basis element `i` of degree `m`, in degree `m + 1`.
    pub fn d_basis(&self, m: i64, i: usize) -> SparseVec {
        self.normal_form(&raw_d(&self.basis_raw(m, i))).sparse()
    }

    fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        -self.window..=self.window
    }

    fn in_window(&self, m: i64) -> bool {
        m.abs() <= self.window
    }

    /// Well-definedness, antisymmetry and Jacobi on every basis triple of the
    /// window. Indices are `(degree, basis index)` pairs.
    pub fn verify(&self) -> ViolationReport {
        let c = &self.tca;
        let mut r = ViolationReport::new();
        let dense = |d: i64, s: SparseVec| {
            let mut v = vec![Scalar::zero(); self.dim(d)];
            for (k, x) in s {
                v[k] = x;
            }
            v
        };
        for m in self.degrees() {
            for i in 0..self.dim(m) {
                let x = self.basis_raw(m, i);
                for g in 0..c.dim0 {
                    for d in self.degrees().filter(|d| self.in_window(m + d)) {
                        let h = hat_partial(c, &unit_dense(c.dim0, g), -d);
                        let l = self.normal_form(&raw_bracket(c, &x, &h));
                        r.check("well-defined-left", &[m, i as i64, g as i64, d], l.coords);
                        let rr = self.normal_form(&raw_bracket(c, &h, &x));
                        r.check("well-defined-right", &[m, i as i64, g as i64, d], rr.coords);
                    }
                }
            }
        }
        for m in self.degrees() {
            for n in self.degrees().filter(|n| self.in_window(m + n)) {
                for i in 0..self.dim(m) {
                    for j in 0..self.dim(n) {
                        let mut s = self.bracket_basis(m, i, n, j);
                        for (k, v) in self.bracket_basis(n, j, m, i) {
                            *s.entry(k).or_insert_with(Scalar::zero) += v;
                        }
                        r.check("antisymmetry", &[m, i as i64, n, j as i64], dense(m + n, s));
                    }
                }
            }
        }
        for m in self.degrees() {
            for n in self.degrees().filter(|n| self.in_window(m + n)) {
                for k in self.degrees().filter(|k| self.in_window(m + k) && self.in_window(n + k) && self.in_window(m + n + k)) {
                    for i in 0..self.dim(m) {
                        for j in 0..self.dim(n) {
                            for l in 0..self.dim(k) {
                                let res = self.jacobiator((m, i), (n, j), (k, l));
                                let idx = [m, i as i64, n, j as i64, k, l as i64];
                                r.check("jacobi", &idx, dense(m + n + k, res));
                            }
                        }
                    }
                }
            }
        }
        r
    }

    fn jacobiator(&self, x: (i64, usize), y: (i64, usize), z: (i64, usize)) -> SparseVec {
        let unit = |i: usize| -> SparseVec { std::iter::once((i, q(1))).collect() };
        let mut out = SparseVec::new();
        for (p, s, t) in [(x, y, z), (y, z, x), (z, x, y)] {
            let inner = self.bracket_basis(s.0, s.1, t.0, t.1);
            for (k, v) in self.bracket_sparse(p.0, &unit(p.1), s.0 + t.0, &inner) {
                *out.entry(k).or_insert_with(Scalar::zero) += v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Checks the axioms of the input, builds `L` and verifies it on the window.
pub fn build_loop_lie(c: &Tca, window: i64) -> Result<WindowedLieAlgebra, LoopError> {
    let rep = c.check()?;
    if !rep.is_empty() {
        return Err(LoopError::Invalid(rep));
    }
    let w = WindowedLieAlgebra::new(c, window)?;
    let rep = w.verify();
    if !rep.is_empty() {
        return Err(LoopError::Verification(rep));
    }
    Ok(w)
}

/// `L₍₀₎` next to the semidirect product `A ⋊ (B/∂A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeZero {
    pub lie: LieAlgebra,
    pub semidirect: LieAlgebra,
    /// Columns are images of the `L₍₀₎` basis in the semidirect product.
    pub iso: Matrix,
}

impl DegreeZero {
    /// `iso` is invertible and carries one bracket to the other.
    pub fn check(&self) -> ViolationReport {
        let mut r = ViolationReport::new();
        let n = self.lie.dim();
        if self.iso.inverse().is_none() {
            r.push("iso-invertible", vec![], vec![q(1)]);
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.iso.apply(self.lie.bracket.basis(i, j));
                let (x, y) = (self.iso.apply(&unit_dense(n, i)), self.iso.apply(&unit_dense(n, j)));
                let rhs = self.semidirect.bracket.apply(&x, &y);
                r.check("iso-bracket", &[i, j], dense_sub(&lhs, &rhs));
            }
        }
        r
    }
}

pub fn degree_zero_algebra(w: &WindowedLieAlgebra) -> Result<DegreeZero, LoopError> {
    let c = &w.tca;
    let n = w.dim(0);
    let mut br = Bilinear::zeros(n, n, n);
    for i in 0..n {
        for j in 0..n {
            for (k, v) in w.bracket_basis(0, i, 0, j) {
                br.set(i, j, k, v);
            }
        }
    }
    let quo = lie_quotient(c)?;
    let (d0, dg) = (c.dim0, quo.lie.dim());
    let mut semi = Bilinear::zeros(n, n, n);
    for x in 0..dg {
        for y in 0..dg {
            for (k, v) in quo.lie.bracket.basis(x, y).iter().enumerate() {
                semi.set(d0 + x, d0 + y, d0 + k, v.clone());
            }
        }
        for a in 0..d0 {
            for (k, v) in quo.action.basis(x, a).iter().enumerate() {
                semi.set(d0 + x, a, k, v.clone());
                semi.set(a, d0 + x, k, -v.clone());
            }
        }
    }
    let mut iso = Matrix::identity(n);
    if quo.free != w.free {
        // both complements come from the same pivot rule; keep the general map
        iso = Matrix::zeros(n, n);
        for i in 0..d0 {
            iso.set(i, i, q(1));
        }
        for (k, &f) in w.free.iter().enumerate() {
            for (j, v) in quo.project(&unit_dense(c.dim1, f)).into_iter().enumerate() {
                iso.set(d0 + j, d0 + k, v);
            }
        }
    }
    Ok(DegreeZero { lie: LieAlgebra::new(br), semidirect: LieAlgebra::new(semi), iso })
}

/// Basis of `ker ∂`, after confirming that each `a(n)` vanishes for
/// `n ≠ -1` and `a(-1)` is central on the window.
pub fn central_elements(w: &WindowedLieAlgebra) -> Result<Vec<Vec<Scalar>>, LoopError> {
    let c = &w.tca;
    let ker = kernel(&c.partial);
    let mut out = Vec::new();
    let mut r = ViolationReport::new();
    for (idx, a) in ker.basis_dense().into_iter().enumerate() {
        for d in w.degrees().filter(|&d| d != 0) {
            let x = w.normal_form(&RawLoopElement::a_mode(c, &a, -d - 1));
            r.check("vanishing-mode", &[idx as i64, d], x.coords);
        }
        let z = w.normal_form(&RawLoopElement::a_mode(c, &a, -1));
        for m in w.degrees() {
            for i in 0..w.dim(m) {
                let br = w.bracket(&z, &w.basis(m, i));
                r.check("central", &[idx as i64, m, i as i64], br.coords);
            }
        }
        out.push(a);
    }
    if r.is_empty() {
        Ok(out)
    } else {
        Err(LoopError::Verification(r))
    }
}

/// Compares every stored bracket of modes with
/// `[u(m), v(n)] = (u₀v)(m+n) + m·(u₁v)(m+n-1)`.
pub fn commutator_series_check(w: &WindowedLieAlgebra) -> bool {
    let c = &w.tca;
    let n_all = c.total_dim();
    let exps = |i: usize| -> Vec<i64> {
        // degree of mode k is -k-1 on A and -k on B
        let shift = if i < c.dim0 { 1 } else { 0 };
        w.degrees().map(|d| -d - shift).collect()
    };
    for u in 0..n_all {
        for v in 0..n_all {
            let (eu, ev) = (c.basis(u), c.basis(v));
            let p0 = c.prod(0, &eu, &ev);
            let p1 = c.prod(1, &eu, &ev);
            for m in exps(u) {
                for n in exps(v) {
                    let (x, y) = (w.mode(u, m), w.mode(v, n));
                    let d = x.degree + y.degree;
                    if !w.in_window(d) {
                        continue;
                    }
                    let lhs = w.bracket(&x, &y);
                    let mut parts: BTreeMap<i64, Vec<Scalar>> = BTreeMap::new();
                    for (e, k, s) in [(&p0, m + n, q(1)), (&p1, m + n - 1, q(m))] {
                        for part in w.mode_elt(e, k) {
                            let acc = parts.entry(part.degree).or_insert_with(|| vec![Scalar::zero(); w.dim(part.degree)]);
                            *acc = dense_add(acc, &dense_scale(&s, &part.coords));
                        }
                    }
                    let want = parts.remove(&d).unwrap_or_else(|| vec![Scalar::zero(); w.dim(d)]);
                    if lhs.coords != want || parts.values().any(|p| !dense_is_zero(p)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        unit_dense(n, i)
    }

    #[test]
    fn hat_partial_examples() {
        let h = catalog::heisenberg(q(1));
        assert!(hat_partial(&h, &e(1, 0), 0).is_zero());
        let x = hat_partial(&h, &e(1, 0), 2);
        assert_eq!(x, RawLoopElement::a_mode(&h, &e(1, 0), 1).scale(&q(2)));
        let mut id = Tca::zero(1, 1);
        id.partial.set(0, 0, q(1));
        let x = hat_partial(&id, &e(1, 0), 1);
        let want = RawLoopElement::b_mode(&id, &e(1, 0), 1).add(&RawLoopElement::a_mode(&id, &e(1, 0), 0));
        assert_eq!(x, want);
    }

    #[test]
    fn raw_bracket_examples() {
        let h = catalog::heisenberg(q(1));
        let b = e(1, 0);
        let x = raw_bracket(&h, &RawLoopElement::b_mode(&h, &b, 1), &RawLoopElement::b_mode(&h, &b, -1));
        assert_eq!(x, RawLoopElement::a_mode(&h, &e(1, 0), -1));
        let a0 = RawLoopElement::a_mode(&h, &e(1, 0), 0);
        assert!(raw_bracket(&h, &a0, &RawLoopElement::a_mode(&h, &e(1, 0), 5)).is_zero());
        let s = catalog::sl2(q(1));
        let hh = e(3, 1);
        let x = raw_bracket(&s, &RawLoopElement::b_mode(&s, &hh, 1), &RawLoopElement::b_mode(&s, &hh, -1));
        assert_eq!(x, RawLoopElement::a_mode(&s, &e(1, 0), -1).scale(&q(2)));
    }

    #[test]
    fn normal_form_is_a_projection_killing_hat_partial() {
        let c = catalog::line_algebroid().to_tca().unwrap();
        let w = WindowedLieAlgebra::new(&c, 3).unwrap();
        for n in -3..=3 {
            for a in 0..c.dim0 {
                assert!(w.normal_form(&hat_partial(&c, &e(c.dim0, a), n)).is_zero());
            }
        }
        for m in -3..=3 {
            for i in 0..c.total_dim() {
                let x = RawLoopElement::basis_mode(&c, i, m);
                let nf = w.normal_form(&x);
                assert_eq!(w.normal_form(&w.lift(&nf)), nf);
                let diff = x.sub(&w.lift(&nf));
                assert!(hat_partial_image(&c, x.degree).contains(&diff.coords()));
            }
        }
        // A-part folds into B at nonzero degree
        let x = w.normal_form(&RawLoopElement::a_mode(&c, &e(2, 1), -2));
        assert_eq!(x.coords, w.normal_form(&RawLoopElement::b_mode(&c, &c.partial_of(&e(2, 1)), -1)).coords);
    }

    #[test]
    fn dims_per_degree() {
        let c = catalog::line_algebroid().to_tca().unwrap();
        let w = WindowedLieAlgebra::new(&c, 2).unwrap();
        assert_eq!(w.dim(1), 2);
        assert_eq!(w.dim(0), 2 + 2 - 1);
    }

    #[test]
    fn heisenberg_relations() {
        let h = catalog::heisenberg(q(1));
        let w = build_loop_lie(&h, 4).unwrap();
        for m in -3i64..=3 {
            for n in -3i64..=3 {
                let x = w.bracket(&w.mode(1, m), &w.mode(1, n));
                let want = if m + n == 0 && m != 0 { w.mode(0, -1).coords.iter().map(|v| v * q(m)).collect() } else { vec![q(0); w.dim(-m - n)] };
                assert_eq!(x.coords, want, "m={m} n={n}");
            }
        }
        assert!(commutator_series_check(&w));
    }

    #[test]
    fn verification_on_catalogue() {
        for c in [
            catalog::sl2(q(1)),
            catalog::sl2(q(0)),
            catalog::line_algebroid().to_tca().unwrap(),
            catalog::solvable2(q(1)),
        ] {
            let w = build_loop_lie(&c, 2).unwrap();
            assert!(commutator_series_check(&w));
            let dz = degree_zero_algebra(&w).unwrap();
            assert!(dz.check().is_empty());
        }
    }

    #[test]
    fn conditions_hold_on_valid_input() {
        for c in [catalog::heisenberg(q(2)), catalog::sl2(q(1)), catalog::line_algebroid().to_tca().unwrap()] {
            assert!(check_loop_conditions(&c).unwrap().is_empty());
            assert!(membership_conditions(&c).unwrap().is_empty());
        }
    }

    #[test]
    fn ideal_violation_is_seen_by_both_routes() {
        let mut c = catalog::line_algebroid().to_tca().unwrap();
        // d₀x: perturb so that d₁∂x ≠ d₀x
        let x = c.t0_ba.get(0, 1, 1).clone();
        c.t0_ba.set(0, 1, 1, x + q(1));
        let f = check_ideal_conditions(&c).unwrap();
        assert!(f.has("ideal-b1-da"));
        let m = membership_ideal(&c).unwrap();
        assert!(m.has("ideal-left-b"));
        let fams: std::collections::BTreeSet<_> = f.axioms().into_iter().filter_map(condition_family).collect();
        assert_eq!(fams, m.axioms());
    }

    #[test]
    fn zero_tca_is_abelian() {
        let w = build_loop_lie(&Tca::zero(1, 2), 2).unwrap();
        for m in -2..=2 {
            for n in -2..=2 {
                for i in 0..w.dim(m) {
                    for j in 0..w.dim(n) {
                        assert!(w.bracket_basis(m, i, n, j).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn central_elements_examples() {
        let w = build_loop_lie(&catalog::heisenberg(q(1)), 3).unwrap();
        assert_eq!(central_elements(&w).unwrap().len(), 1);
        let mut id = Tca::zero(1, 1);
        id.partial.set(0, 0, q(1));
        id.t1_bb.set(0, 0, 0, q(0));
        let w = WindowedLieAlgebra::new(&id, 2).unwrap();
        assert!(central_elements(&w).unwrap().is_empty());
        let sum = catalog::sl2(q(1)).direct_sum(&catalog::heisenberg(q(1)));
        let w = build_loop_lie(&sum, 2).unwrap();
        assert_eq!(central_elements(&w).unwrap().len(), 2);
    }

    #[test]
    fn d_preserves_hat_partial_image() {
        let c = catalog::truncated_line().to_tca().unwrap();
        for n in -3..=3 {
            for a in 0..c.dim0 {
                let h = hat_partial(&c, &e(c.dim0, a), n);
                let dh = raw_d(&h);
                assert!(hat_partial_image(&c, dh.degree).contains(&dh.coords()));
            }
        }
    }
}
