//! PBW bases of modules induced over the loop Lie algebra, with generator
//! actions computed by commuting through ordered monomials.
//!
//! Two kinds of module are supported: `V_L`, induced from the trivial module
//! of `L^{≥0}` (creation operators `A(-1)` and `B(-k)`, `k ≥ 1`), and `M(U)`,
//! induced from an `L₍₀₎`-module `U` with `L₍<0₎` acting by zero (creation
//! operators `L₍ₖ₎`, `k ≥ 1`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{q, Matrix, Scalar, SparseVec};
use crate::looplie::{NormalLoopElement, WindowedLieAlgebra};
use crate::report::ViolationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("degree {degree} is outside the window 0..={max}; raise --max-degree")]
    Window { degree: i64, max: i64 },
    #[error("monomial of A-weight {weight} exceeds the cap {cap}; raise --weight-cap")]
    Cap { weight: usize, cap: usize },
    #[error("operation needs the vacuum module")]
    NotVacuum,
    #[error("base action has {got} operators, expected {want}")]
    BaseShape { got: usize, want: usize },
}

/// Basis element `index` of `L₍degree₎`. Ordered with larger degree first,
/// then by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gen {
    pub degree: i64,
    pub index: usize,
}

impl Ord for Gen {
    fn cmp(&self, o: &Self) -> Ordering {
        o.degree.cmp(&self.degree).then(self.index.cmp(&o.index))
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Ordered product of creation operators applied to base vector `tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    pub factors: Vec<Gen>,
    pub tail: usize,
}

impl PbwMonomial {
    pub fn base(tail: usize) -> Self {
        PbwMonomial { factors: Vec::new(), tail }
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|g| g.degree).sum()
    }

    /// Number of degree-zero factors.
    pub fn a_weight(&self) -> usize {
        self.factors.iter().filter(|g| g.degree == 0).count()
    }
}

/// Finite linear combination of monomials.
pub type ModVec = BTreeMap<PbwMonomial, Scalar>;

pub fn axpy(out: &mut ModVec, c: &Scalar, v: &ModVec) {
    if c.is_zero() {
        return;
    }
    for (m, x) in v {
        let e = out.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c * x;
        if e.is_zero() {
            out.remove(m);
        }
    }
}

pub fn mod_sub(a: &ModVec, b: &ModVec) -> ModVec {
    let mut out = a.clone();
    axpy(&mut out, &q(-1), b);
    out
}

/// What the induction starts from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    /// `ℚ1`, killed by `L^{≥0}`.
    Vacuum,
    /// `U` with `ops[i]` the action of basis element `i` of `L₍₀₎`.
    Top { dim: usize, ops: Vec<Matrix> },
}

/// Basis of one graded piece with a lookup table.
#[derive(Clone, Debug)]
pub struct Piece {
    pub basis: Vec<PbwMonomial>,
    index: HashMap<PbwMonomial, usize>,
}

impl Piece {
    fn new(basis: Vec<PbwMonomial>) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Piece { basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, m: &PbwMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `v`; `None` if `v` leaves the piece.
    pub fn coords(&self, v: &ModVec) -> Option<SparseVec> {
        v.iter().map(|(m, x)| self.position(m).map(|i| (i, x.clone()))).collect()
    }

    pub fn vector(&self, coords: &SparseVec) -> ModVec {
        coords.iter().map(|(i, x)| (self.basis[*i].clone(), x.clone())).collect()
    }
}

type MemoKey = (Gen, PbwMonomial);

/// Induced graded module with memoised generator actions.
pub struct GradedModule {
    lie: Arc<WindowedLieAlgebra>,
    base: Base,
    max_degree: i64,
    a_cap: usize,
    memo: Mutex<HashMap<MemoKey, ModVec>>,
    pieces: Mutex<BTreeMap<(i64, usize), Arc<Piece>>>,
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedModule")
            .field("base", &self.base)
            .field("max_degree", &self.max_degree)
            .field("a_cap", &self.a_cap)
            .finish()
    }
}

impl GradedModule {
    /// `V_L` with degree-zero pieces truncated at `a_cap` factors from `A(-1)`.
    pub fn build_vl(lie: Arc<WindowedLieAlgebra>, max_degree: i64, a_cap: usize) -> Self {
        Self::with_base(lie, Base::Vacuum, max_degree, a_cap)
    }

    /// `M(U)` for `U` given by the action of each basis element of `L₍₀₎`.
    pub fn induced(lie: Arc<WindowedLieAlgebra>, dim: usize, ops: Vec<Matrix>, max_degree: i64) -> Result<Self, PbwError> {
        if ops.len() != lie.dim(0) {
            return Err(PbwError::BaseShape { got: ops.len(), want: lie.dim(0) });
        }
        Ok(Self::with_base(lie, Base::Top { dim, ops }, max_degree, 0))
    }

    fn with_base(lie: Arc<WindowedLieAlgebra>, base: Base, max_degree: i64, a_cap: usize) -> Self {
        GradedModule {
            lie,
            base,
            max_degree,
            a_cap,
            memo: Mutex::new(HashMap::new()),
            pieces: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn lie(&self) -> &Arc<WindowedLieAlgebra> {
        &self.lie
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    pub fn a_cap(&self) -> usize {
        self.a_cap
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self.base, Base::Vacuum)
    }

    fn tail_dim(&self) -> usize {
        match &self.base {
            Base::Vacuum => 1,
            Base::Top { dim, .. } => *dim,
        }
    }

    pub fn is_creation(&self, g: Gen) -> bool {
        g.degree > 0 || (self.is_vacuum() && g.degree == 0 && g.index < self.lie.tca().dim0)
    }

    /// Generators of degree `m`.
    pub fn gens(&self, m: i64) -> impl Iterator<Item = Gen> {
        (0..self.lie.dim(m)).map(move |index| Gen { degree: m, index })
    }

    /// All generators with `|degree| ≤ n`.
    pub fn gens_within(&self, n: i64) -> Vec<Gen> {
        (-n..=n).flat_map(|m| self.gens(m)).collect()
    }

    /// Lowering generators of degree `-n ≤ m ≤ -1`.
    pub fn lowering_gens(&self, n: i64) -> Vec<Gen> {
        (-n..=-1).rev().flat_map(|m| self.gens(m)).collect()
    }

    fn check_degree(&self, n: i64) -> Result<(), PbwError> {
        if n < 0 || n > self.max_degree {
            return Err(PbwError::Window { degree: n, max: self.max_degree });
        }
        Ok(())
    }

    /// Monomials of degree `n` with at most `cap` degree-zero factors.
    pub fn enumerate_capped(&self, n: i64, cap: usize) -> Result<Vec<PbwMonomial>, PbwError> {
        self.check_degree(n)?;
        let mut gens: Vec<Gen> = (0..=n).flat_map(|m| self.gens(m)).filter(|&g| self.is_creation(g)).collect();
        gens.sort();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate_rec(&gens, 0, n, 0, cap, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_rec(
        &self,
        gens: &[Gen],
        start: usize,
        remaining: i64,
        zeros: usize,
        cap: usize,
        cur: &mut Vec<Gen>,
        out: &mut Vec<PbwMonomial>,
    ) {
        if remaining == 0 {
            for tail in 0..self.tail_dim() {
                out.push(PbwMonomial { factors: cur.clone(), tail });
            }
        }
        for k in start..gens.len() {
            let g = gens[k];
            if g.degree > remaining || (g.degree == 0 && (zeros == cap || remaining > 0)) {
                continue;
            }
            cur.push(g);
            self.enumerate_rec(gens, k, remaining - g.degree, zeros + usize::from(g.degree == 0), cap, cur, out);
            cur.pop();
        }
    }

    /// Basis of piece `n` at the module's own cap.
    pub fn enumerate_basis(&self, n: i64) -> Result<Vec<PbwMonomial>, PbwError> {
        self.enumerate_capped(n, self.a_cap)
    }

    pub fn piece(&self, n: i64) -> Result<Arc<Piece>, PbwError> {
        self.piece_capped(n, self.a_cap)
    }

    pub fn piece_capped(&self, n: i64, cap: usize) -> Result<Arc<Piece>, PbwError> {
        if let Some(p) = self.pieces.lock().expect("piece cache").get(&(n, cap)) {
            return Ok(p.clone());
        }
        let p = Arc::new(Piece::new(self.enumerate_capped(n, cap)?));
        self.pieces.lock().expect("piece cache").insert((n, cap), p.clone());
        Ok(p)
    }

    fn base_action(&self, g: Gen, tail: usize) -> ModVec {
        match &self.base {
            Base::Top { ops, .. } if g.degree == 0 => ops[g.index]
                .column(tail)
                .into_iter()
                .map(|(i, x)| (PbwMonomial::base(i), x))
                .collect(),
            _ => ModVec::new(),
        }
    }

    /// `g · m` for a basis monomial `m`.
    pub fn act_gen(&self, g: Gen, m: &PbwMonomial) -> ModVec {
        if g.degree + m.degree() < 0 {
            return ModVec::new();
        }
        let key = (g, m.clone());
        if let Some(v) = self.memo.lock().expect("action memo").get(&key) {
            return v.clone();
        }
        let v = self.act_gen_uncached(g, m);
        self.memo.lock().expect("action memo").insert(key, v.clone());
        v
    }

    fn act_gen_uncached(&self, g: Gen, m: &PbwMonomial) -> ModVec {
        let creation = self.is_creation(g);
        let Some(&y) = m.factors.first() else {
            if creation {
                return std::iter::once((PbwMonomial { factors: vec![g], tail: m.tail }, Scalar::one())).collect();
            }
            return self.base_action(g, m.tail);
        };
        if creation && g <= y {
            let mut factors = Vec::with_capacity(m.factors.len() + 1);
            factors.push(g);
            factors.extend_from_slice(&m.factors);
            return std::iter::once((PbwMonomial { factors, tail: m.tail }, Scalar::one())).collect();
        }
        // g y r = y (g r) + [g, y] r
        let rest = PbwMonomial { factors: m.factors[1..].to_vec(), tail: m.tail };
        let mut out = self.act_vec(y, &self.act_gen(g, &rest));
        let d = g.degree + y.degree;
        for (k, c) in self.lie.bracket_basis(g.degree, g.index, y.degree, y.index) {
            axpy(&mut out, &c, &self.act_gen(Gen { degree: d, index: k }, &rest));
        }
        out
    }

    pub fn act_vec(&self, g: Gen, v: &ModVec) -> ModVec {
        let mut out = ModVec::new();
        for (m, c) in v {
            axpy(&mut out, c, &self.act_gen(g, m));
        }
        out
    }

    /// Action of an element of `L` in normal form.
    pub fn act(&self, x: &NormalLoopElement, v: &ModVec) -> ModVec {
        let mut out = ModVec::new();
        for (i, c) in x.coords.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.act_vec(Gen { degree: x.degree, index: i }, v));
            }
        }
        out
    }

    /// Applies the factors of `m` right to left to `v`.
    pub fn act_monomial(&self, factors: &[Gen], v: &ModVec) -> ModVec {
        factors.iter().rev().fold(v.clone(), |acc, &g| self.act_vec(g, &acc))
    }

    /// Matrix of `g` from piece `n` to piece `n + deg g`.
    pub fn action_matrix(&self, g: Gen, n: i64) -> Result<Matrix, PbwError> {
        let src = self.piece(n)?;
        let d = n + g.degree;
        if d < 0 {
            return Ok(Matrix::zeros(0, src.dim()));
        }
        let dst = self.piece(d)?;
        let mut cols = Vec::with_capacity(src.dim());
        for m in &src.basis {
            let v = self.act_gen(g, m);
            let c = dst.coords(&v).ok_or(PbwError::Cap {
                weight: v.keys().map(PbwMonomial::a_weight).max().unwrap_or(0),
                cap: self.a_cap,
            })?;
            cols.push(c);
        }
        Ok(Matrix::from_columns(dst.dim(), &cols))
    }

    /// `v ↦ D v` on `V_L`, from `D1 = 0` and `[D, u(m)] = -m·u(m-1)`.
    pub fn d_operator(&self, v: &ModVec) -> Result<ModVec, PbwError> {
        if !self.is_vacuum() {
            return Err(PbwError::NotVacuum);
        }
        let mut out = ModVec::new();
        for (m, c) in v {
            axpy(&mut out, c, &self.d_monomial(&m.factors));
        }
        Ok(out)
    }

    fn d_monomial(&self, factors: &[Gen]) -> ModVec {
        let Some((&y, rest)) = factors.split_first() else {
            return ModVec::new();
        };
        let tail: ModVec = self.act_monomial(rest, &self.vacuum());
        let mut out = self.act_vec(y, &self.d_monomial(rest));
        let d = y.degree + 1;
        for (k, c) in self.lie.d_basis(y.degree, y.index) {
            axpy(&mut out, &c, &self.act_vec(Gen { degree: d, index: k }, &tail));
        }
        out
    }

    pub fn vacuum(&self) -> ModVec {
        std::iter::once((PbwMonomial::base(0), Scalar::one())).collect()
    }

    /// Mode `k` of basis element `i` of `A ⊕ B` acting on `v`.
    pub fn act_mode(&self, i: usize, k: i64, v: &ModVec) -> ModVec {
        self.act(&self.lie.mode(i, k), v)
    }

    /// `(u₋₁v)ₙ w = Σ_{i≥0} u(-1-i) v(n+i) w + v(n-1-i) u(i) w` for basis
    /// elements `u`, `v` of `A ⊕ B`; `w` homogeneous of degree `deg`.
    pub fn iterate_action(&self, u: usize, v: usize, n: i64, w: &ModVec, deg: i64) -> ModVec {
        let mode_deg = |x: usize, k: i64| if x < self.lie.tca().dim0 { -k - 1 } else { -k };
        let mut out = ModVec::new();
        let mut i = 0i64;
        loop {
            let d1 = deg + mode_deg(v, n + i);
            let d2 = deg + mode_deg(u, i);
            if d1 < 0 && d2 < 0 {
                break;
            }
            if d1 >= 0 {
                let t = self.act_mode(v, n + i, w);
                axpy(&mut out, &q(1), &self.act_mode(u, -1 - i, &t));
            }
            if d2 >= 0 {
                let t = self.act_mode(u, i, w);
                axpy(&mut out, &q(1), &self.act_mode(v, n - 1 - i, &t));
            }
            i += 1;
        }
        out
    }
}

/// `x(yw) − y(xw) − [x,y]w = 0` for all generator pairs of degree at most
/// `window` in magnitude and basis vectors `w` of pieces `0..=max_degree`.
pub fn check_representation(g: &GradedModule, window: i64, max_degree: i64) -> Result<ViolationReport, PbwError> {
    let mut r = ViolationReport::new();
    let gens = g.gens_within(window);
    let lie = g.lie();
    for n in 0..=max_degree {
        let piece = g.piece(n)?;
        for (wi, w) in piece.basis.iter().enumerate() {
            let wv: ModVec = std::iter::once((w.clone(), Scalar::one())).collect();
            for &x in &gens {
                let xw = g.act_vec(x, &wv);
                for &y in &gens {
                    let d = n + x.degree + y.degree;
                    if d < 0 || d > max_degree {
                        continue;
                    }
                    let lhs = mod_sub(&g.act_vec(x, &g.act_vec(y, &wv)), &g.act_vec(y, &xw));
                    let br = NormalLoopElement {
                        degree: x.degree + y.degree,
                        coords: dense_of(&lie.bracket_basis(x.degree, x.index, y.degree, y.index), lie.dim(x.degree + y.degree)),
                    };
                    let res = mod_sub(&lhs, &g.act(&br, &wv));
                    if !res.is_empty() {
                        let idx = [n, wi as i64, x.degree, x.index as i64, y.degree, y.index as i64];
                        r.push("representation", idx.to_vec(), res.values().cloned().collect());
                    }
                }
            }
        }
    }
    Ok(r)
}

pub(crate) fn dense_of(s: &SparseVec, n: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    for (i, x) in s {
        v[*i] = x.clone();
    }
    v
}

fn binom(m: i64, i: i64) -> Scalar {
    (0..i).fold(q(1), |acc, j| acc * q(m - j) / q(j + 1))
}

/// Borcherds commutator formula `[u_m, v_n] = Σ_i C(m,i) (u_i v)_{m+n-i}`
/// for basis elements `u, v ∈ A ⊕ B`, on pieces `0..=max_degree`, with all
/// modes of degree at most `window` in magnitude.
pub fn commutator_consistency(g: &GradedModule, window: i64, max_degree: i64) -> Result<ViolationReport, PbwError> {
    let lie = g.lie();
    let c = lie.tca();
    let n_all = c.total_dim();
    let mode_deg = |x: usize, k: i64| if x < c.dim0 { -k - 1 } else { -k };
    let exps = |x: usize| -> Vec<i64> {
        let shift = i64::from(x < c.dim0);
        (-window..=window).map(|d| -d - shift).collect()
    };
    let mut r = ViolationReport::new();
    for n in 0..=max_degree {
        let piece = g.piece(n)?;
        for (wi, w) in piece.basis.iter().enumerate() {
            let wv: ModVec = std::iter::once((w.clone(), Scalar::one())).collect();
            for u in 0..n_all {
                for v in 0..n_all {
                    let (eu, ev) = (c.basis(u), c.basis(v));
                    let prods = [c.prod(0, &eu, &ev), c.prod(1, &eu, &ev)];
                    for m in exps(u) {
                        for k in exps(v) {
                            let d = n + mode_deg(u, m) + mode_deg(v, k);
                            if d < 0 || d > max_degree {
                                continue;
                            }
                            let uv = g.act_mode(u, m, &g.act_mode(v, k, &wv));
                            let vu = g.act_mode(v, k, &g.act_mode(u, m, &wv));
                            let mut res = mod_sub(&uv, &vu);
                            for (i, p) in prods.iter().enumerate() {
                                let coef = binom(m, i as i64);
                                for part in lie.mode_elt(p, m + k - i as i64) {
                                    axpy(&mut res, &-coef.clone(), &g.act(&part, &wv));
                                }
                            }
                            if !res.is_empty() {
                                let idx = [n, wi as i64, u as i64, m, v as i64, k];
                                r.push("borcherds-commutator", idx.to_vec(), res.values().cloned().collect());
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// `[D, v(k)] = -k·v(k-1)` on basis vectors of `V_L` pieces `0..=max_degree`.
pub fn check_d_operator(g: &GradedModule, window: i64, max_degree: i64) -> Result<ViolationReport, PbwError> {
    let c = g.lie().tca();
    let mut r = ViolationReport::new();
    for n in 0..=max_degree {
        let piece = g.piece(n)?;
        for (wi, w) in piece.basis.iter().enumerate() {
            let wv: ModVec = std::iter::once((w.clone(), Scalar::one())).collect();
            let dw = g.d_operator(&wv)?;
            for v in 0..c.total_dim() {
                let shift = i64::from(v < c.dim0);
                for k in (-window..=window).map(|d| -d - shift) {
                    let d = n - k - shift + 1;
                    if d < 0 || d > max_degree + 1 {
                        continue;
                    }
                    let lhs = mod_sub(&g.d_operator(&g.act_mode(v, k, &wv))?, &g.act_mode(v, k, &dw));
                    let mut res = lhs;
                    axpy(&mut res, &q(k), &g.act_mode(v, k - 1, &wv));
                    if !res.is_empty() {
                        r.push("d-commutator", vec![n, wi as i64, v as i64, k], res.values().cloned().collect());
                    }
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::looplie::build_loop_lie;

    fn heis_lie() -> Arc<WindowedLieAlgebra> {
        Arc::new(build_loop_lie(&catalog::heisenberg(q(1)), 6).unwrap())
    }

    fn character(lie: &WindowedLieAlgebra, lambda: i64) -> (usize, Vec<Matrix>) {
        let ops = (0..lie.dim(0))
            .map(|i| {
                let mut m = Matrix::zeros(1, 1);
                m.set(0, 0, if i < lie.tca().dim0 { q(1) } else { q(lambda) });
                m
            })
            .collect();
        (1, ops)
    }

    fn partitions(n: usize) -> usize {
        let mut p = vec![0usize; n + 1];
        p[0] = 1;
        for k in 1..=n {
            for j in k..=n {
                p[j] += p[j - k];
            }
        }
        p[n]
    }

    #[test]
    fn gen_order() {
        let a = Gen { degree: 2, index: 1 };
        let b = Gen { degree: 1, index: 0 };
        let c = Gen { degree: 1, index: 2 };
        assert!(a < b && b < c);
    }

    #[test]
    fn fock_dims_are_partition_numbers() {
        let lie = heis_lie();
        let (d, ops) = character(&lie, 0);
        let m = GradedModule::induced(lie, d, ops, 6).unwrap();
        for n in 0..=6 {
            assert_eq!(m.enumerate_basis(n).unwrap().len(), partitions(n as usize));
        }
        assert!(m.enumerate_basis(7).is_err());
    }

    #[test]
    fn vl_pieces() {
        let lie = heis_lie();
        let vl = GradedModule::build_vl(lie, 3, 3);
        assert_eq!(vl.piece(0).unwrap().dim(), 4);
        let sl2 = Arc::new(build_loop_lie(&catalog::sl2(q(1)), 2).unwrap());
        let vl = GradedModule::build_vl(sl2, 2, 0);
        assert_eq!(vl.piece(1).unwrap().dim(), 3);
        let zero = Arc::new(build_loop_lie(&crate::tca::Tca::zero(0, 1), 2).unwrap());
        let vl = GradedModule::build_vl(zero, 2, 5);
        assert_eq!(vl.piece(0).unwrap().dim(), 1);
    }

    #[test]
    fn fock_lowering() {
        let lie = heis_lie();
        let (d, ops) = character(&lie, 0);
        let m = GradedModule::induced(lie.clone(), d, ops, 6).unwrap();
        let b1 = Gen { degree: 1, index: 0 };
        let v = m.act_gen(b1, &PbwMonomial::base(0));
        let back = m.act_vec(Gen { degree: -1, index: 0 }, &v);
        assert_eq!(back, std::iter::once((PbwMonomial::base(0), q(1))).collect());
        // e(-1) is the identity on every piece
        for n in 0..=4 {
            for w in m.enumerate_basis(n).unwrap() {
                let wv: ModVec = std::iter::once((w, q(1))).collect();
                assert_eq!(m.act_mode(0, -1, &wv), wv);
            }
        }
    }

    #[test]
    fn representation_and_borcherds_on_fock() {
        let lie = heis_lie();
        let (d, ops) = character(&lie, 1);
        let m = GradedModule::induced(lie, d, ops, 4).unwrap();
        assert!(check_representation(&m, 4, 4).unwrap().is_empty());
        assert!(commutator_consistency(&m, 4, 4).unwrap().is_empty());
    }

    #[test]
    fn d_operator_examples() {
        let vl = GradedModule::build_vl(heis_lie(), 3, 2);
        let one = vl.vacuum();
        assert!(vl.d_operator(&one).unwrap().is_empty());
        let b1 = vl.act_mode(1, -1, &one);
        assert_eq!(vl.d_operator(&b1).unwrap(), vl.act_mode(1, -2, &one));
        let e1 = vl.act_mode(0, -1, &one);
        assert!(vl.d_operator(&e1).unwrap().is_empty());
        assert!(check_d_operator(&vl, 3, 2).unwrap().is_empty());
        let line = Arc::new(build_loop_lie(&catalog::line_algebroid().to_tca().unwrap(), 3).unwrap());
        let vl = GradedModule::build_vl(line, 3, 2);
        let one = vl.vacuum();
        // D(x(-1)1) = (∂x)(-1)1
        let x1 = vl.act_mode(1, -1, &one);
        assert_eq!(vl.d_operator(&x1).unwrap(), vl.act_mode(2 + 1, -1, &one));
        assert!(check_d_operator(&vl, 2, 2).unwrap().is_empty());
        assert!(check_representation(&vl, 2, 2).unwrap().is_empty());
        assert!(commutator_consistency(&vl, 2, 2).unwrap().is_empty());
    }

    #[test]
    fn iterate_examples() {
        let vl = GradedModule::build_vl(heis_lie(), 3, 3);
        let one = vl.vacuum();
        let ee = vl.iterate_action(0, 0, -1, &one, 0);
        assert_eq!(ee, vl.act_mode(0, -1, &vl.act_mode(0, -1, &one)));
        assert!(vl.iterate_action(0, 1, 5, &one, 0).is_empty());
        let lie = heis_lie();
        let (d, ops) = character(&lie, 1);
        let m = GradedModule::induced(lie, d, ops, 3).unwrap();
        let u = m.vacuum();
        // (e(-1)b)₀u = b·u
        assert_eq!(m.iterate_action(0, 1, 0, &u, 0), u);
    }
}
