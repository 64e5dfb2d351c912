//! Graded modules induced from a degree-zero module `U`: `M(U)`, the quotient
//! `M_B(U)` by the submodule generated by `W(U)`, and `L(U) = M(U)/J(U)` with
//! `J(U)` the maximal graded submodule meeting `U` trivially.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::algebroid::{
    check_la_module, lie_algebroid_quotient, simple_la_modules_check, AlgebroidError, LaModule, LieAlgebroid,
    VertexAlgebroid,
};
use crate::irreducible::{find_isomorphism, Simplicity};
use crate::linalg::{kernel, q, Bilinear, Matrix, Scalar, SparseVec, Subspace};
use crate::looplie::WindowedLieAlgebra;
use crate::pbw::{self, axpy, GradedModule, Gen, ModVec, PbwError, Piece};
use crate::report::ViolationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error("module data has dimensions {got:?}, expected {want:?}")]
    Shape { got: (usize, usize), want: (usize, usize) },
    #[error("W(U) meets degree 0, so U is not a module for the Lie algebroid:\n{0}")]
    NotAlgebroidModule(ViolationReport),
    #[error("top-level module fails the Lie-algebroid module axioms:\n{0}")]
    TopAxioms(ViolationReport),
    #[error("module criterion fails:\n{0}")]
    Criterion(ViolationReport),
    #[error("the degree-zero piece is zero")]
    ZeroTop,
    #[error("vector leaves the enumerated piece")]
    OutsidePiece,
    #[error("degree-zero quotients at the two truncations are not isomorphic")]
    TopMismatch,
}

/// Degreewise subspaces, each in the coordinates of the matching piece.
pub type Graded = BTreeMap<i64, Subspace>;

/// Algebroid data shared by every module over it.
#[derive(Debug)]
pub struct ModuleContext {
    pub algebroid: VertexAlgebroid,
    pub lie_algebroid: LieAlgebroid,
    /// `B → B/A∂A`.
    pub proj: Matrix,
    pub lie: Arc<WindowedLieAlgebra>,
}

impl ModuleContext {
    pub fn new(v: &VertexAlgebroid, lie: Arc<WindowedLieAlgebra>) -> Result<Self, ModuleError> {
        let c = lie.tca();
        if (c.dim0, c.dim1) != (v.dim_a(), v.dim_b) {
            return Err(ModuleError::Shape { got: (v.dim_a(), v.dim_b), want: (c.dim0, c.dim1) });
        }
        let (lie_algebroid, proj) = lie_algebroid_quotient(v)?;
        Ok(ModuleContext { algebroid: v.clone(), lie_algebroid, proj, lie })
    }

    /// Actions on `U` of the basis of `L₍₀₎ = A ⊕ B/∂A`.
    pub fn top_ops(&self, u: &LaModule) -> Result<Vec<Matrix>, ModuleError> {
        let (da, dg) = (self.algebroid.dim_a(), self.lie_algebroid.dim_g);
        if u.a_act.dims() != (da, u.dim, u.dim) || u.g_act.dims() != (dg, u.dim, u.dim) {
            return Err(ModuleError::Shape { got: (u.a_act.dims().0, u.g_act.dims().0), want: (da, dg) });
        }
        let mut ops: Vec<Matrix> = (0..da).map(|a| u.a_op(a)).collect();
        for &b in self.lie.complement() {
            let mut op = Matrix::zeros(u.dim, u.dim);
            for j in 0..dg {
                let c = self.proj.get(j, b);
                if !c.is_zero() {
                    op = op.lin_comb(&c, &u.g_op(j));
                }
            }
            ops.push(op);
        }
        Ok(ops)
    }

    pub fn induce_m(&self, u: &LaModule, n: i64) -> Result<GradedModule, ModuleError> {
        Ok(GradedModule::induced(self.lie.clone(), u.dim, self.top_ops(u)?, n)?)
    }
}

/// Generators of `E`: `e − 1`, `a_i(-1)a_j − a_i a_j`, `a_i(-1)b_j − a_i b_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EGen {
    Unit,
    Aa(usize, usize),
    Ab(usize, usize),
}

impl EGen {
    pub fn weight(self) -> i64 {
        match self {
            EGen::Ab(..) => 1,
            _ => 0,
        }
    }

    pub fn all(v: &VertexAlgebroid) -> Vec<EGen> {
        let (da, db) = (v.dim_a(), v.dim_b);
        let mut out = vec![EGen::Unit];
        for i in 0..da {
            out.extend((i..da).map(|j| EGen::Aa(i, j)));
        }
        for i in 0..da {
            out.extend((0..db).map(|j| EGen::Ab(i, j)));
        }
        out
    }
}

fn mode_sum(m: &GradedModule, coeffs: &[Scalar], offset: usize, n: i64, w: &ModVec) -> ModVec {
    let mut out = ModVec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            axpy(&mut out, c, &m.act_mode(offset + k, n, w));
        }
    }
    out
}

/// Coefficient `n` of the vertex operator of an `E`-generator on `w` of degree `deg`.
pub fn e_coefficient(v: &VertexAlgebroid, m: &GradedModule, g: EGen, n: i64, w: &ModVec, deg: i64) -> ModVec {
    let da = v.dim_a();
    match g {
        EGen::Unit => {
            let mut out = mode_sum(m, &v.a.unit, 0, n, w);
            if n == -1 {
                axpy(&mut out, &q(-1), w);
            }
            out
        }
        EGen::Aa(i, j) => {
            let mut out = m.iterate_action(i, j, n, w, deg);
            axpy(&mut out, &q(-1), &mode_sum(m, v.a.mult.basis(i, j), 0, n, w));
            out
        }
        EGen::Ab(i, j) => {
            let mut out = m.iterate_action(i, da + j, n, w, deg);
            axpy(&mut out, &q(-1), &mode_sum(m, v.act.basis(i, j), da, n, w));
            out
        }
    }
}

fn unit_vec(piece: &Piece, i: usize) -> ModVec {
    std::iter::once((piece.basis[i].clone(), q(1))).collect()
}

fn coords(piece: &Piece, v: &ModVec) -> Result<SparseVec, ModuleError> {
    piece.coords(v).ok_or(ModuleError::OutsidePiece)
}

/// `W(U)(d) = span{v_n u : v ∈ E, u ∈ U}` for `d = 0..=max_degree`.
pub fn build_wu(v: &VertexAlgebroid, m: &GradedModule) -> Result<Graded, ModuleError> {
    let top = m.piece(0)?;
    let mut out = Graded::new();
    for d in 0..=m.max_degree() {
        let piece = m.piece(d)?;
        let mut s = Subspace::zero(piece.dim());
        for g in EGen::all(v) {
            let n = g.weight() - 1 - d;
            for u in 0..top.dim() {
                s.insert(coords(&piece, &e_coefficient(v, m, g, n, &unit_vec(&top, u), 0))?);
            }
        }
        out.insert(d, s);
    }
    Ok(out)
}

/// Action matrices of generators, cached by `(generator, source degree)`.
struct Actions<'a> {
    m: &'a GradedModule,
    cache: BTreeMap<(Gen, i64), Matrix>,
}

impl<'a> Actions<'a> {
    fn new(m: &'a GradedModule) -> Self {
        Actions { m, cache: BTreeMap::new() }
    }

    fn get(&mut self, g: Gen, d: i64) -> Result<&Matrix, ModuleError> {
        if !self.cache.contains_key(&(g, d)) {
            let a = self.m.action_matrix(g, d)?;
            self.cache.insert((g, d), a);
        }
        Ok(&self.cache[&(g, d)])
    }
}

/// Smallest family containing `seed` and stable under every generator of
/// degree at most `max_degree` in magnitude.
pub fn close_submodule(m: &GradedModule, seed: &Graded) -> Result<Graded, ModuleError> {
    let top = m.max_degree();
    let mut out: Graded = (0..=top).map(|d| Ok((d, Subspace::zero(m.piece(d)?.dim())))).collect::<Result<_, ModuleError>>()?;
    let mut queue: Vec<(i64, SparseVec)> = Vec::new();
    for (&d, s) in seed {
        for r in s.basis_rows() {
            if out.get_mut(&d).expect("degree in range").insert(r.clone()) {
                queue.push((d, r.clone()));
            }
        }
    }
    let gens = m.gens_within(top);
    let mut acts = Actions::new(m);
    while let Some((d, v)) = queue.pop() {
        for &g in &gens {
            let t = d + g.degree;
            if t < 0 || t > top {
                continue;
            }
            let image = acts.get(g, d)?.apply_sparse(&v);
            if out.get_mut(&t).expect("degree in range").insert(image.clone()) {
                queue.push((t, image));
            }
        }
    }
    Ok(out)
}

/// `M(U)` modulo a submodule.
#[derive(Debug)]
pub struct QuotientModule {
    pub parent: GradedModule,
    pub relations: Graded,
    pub kind: QuotientKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientKind {
    M,
    MB,
    L,
}

impl QuotientModule {
    pub fn dims(&self) -> Result<Vec<usize>, ModuleError> {
        (0..=self.parent.max_degree())
            .map(|d| Ok(self.parent.piece(d)?.dim() - self.relations.get(&d).map_or(0, Subspace::dim)))
            .collect()
    }

    pub fn max_degree(&self) -> i64 {
        self.parent.max_degree()
    }
}

fn zero_relations(m: &GradedModule) -> Result<Graded, ModuleError> {
    (0..=m.max_degree()).map(|d| Ok((d, Subspace::zero(m.piece(d)?.dim())))).collect()
}

pub fn build_m(ctx: &ModuleContext, u: &LaModule, n: i64) -> Result<QuotientModule, ModuleError> {
    let parent = ctx.induce_m(u, n)?;
    let relations = zero_relations(&parent)?;
    Ok(QuotientModule { parent, relations, kind: QuotientKind::M })
}

/// `M_B(U) = M(U)/U(L)W(U)`.
pub fn build_mb(ctx: &ModuleContext, u: &LaModule, n: i64) -> Result<QuotientModule, ModuleError> {
    let parent = ctx.induce_m(u, n)?;
    let relations = close_submodule(&parent, &build_wu(&ctx.algebroid, &parent)?)?;
    if !relations[&0].is_zero() {
        let mut r = ViolationReport::new();
        for (i, row) in relations[&0].basis_rows().iter().enumerate() {
            r.push("wu-degree-zero", vec![i as i64], crate::pbw::dense_of(row, relations[&0].ambient()));
        }
        return Err(ModuleError::NotAlgebroidModule(r));
    }
    Ok(QuotientModule { parent, relations, kind: QuotientKind::MB })
}

/// Largest graded family `J ⊇ relations` with `J(0) = relations(0)` and
/// `y·J(d) ⊆ J(d + deg y)` for every lowering generator `y`.
pub fn radical_j(m: &GradedModule, relations: &Graded) -> Result<Graded, ModuleError> {
    let mut acts = Actions::new(m);
    let mut out = Graded::new();
    out.insert(0, relations.get(&0).cloned().unwrap_or_else(|| Subspace::zero(0)));
    if out[&0].ambient() == 0 {
        out.insert(0, Subspace::zero(m.piece(0)?.dim()));
    }
    for d in 1..=m.max_degree() {
        let dim = m.piece(d)?.dim();
        let mut rows: Vec<SparseVec> = Vec::new();
        for g in m.lowering_gens(d) {
            let t = d + g.degree;
            let a = acts.get(g, d)?.clone();
            let target = &out[&t];
            // quotient coordinates of each column, stacked as rows of a map
            let mut qm = Matrix::zeros(target.ambient() - target.dim(), dim);
            for c in 0..dim {
                for (i, x) in target.quotient_coords(&a.column(c)).into_iter().enumerate() {
                    if !x.is_zero() {
                        qm.set(i, c, x);
                    }
                }
            }
            rows.extend(qm.row_iter().filter(|r| !r.is_empty()).cloned());
        }
        let k = kernel(&Matrix::from_sparse_rows(dim, rows));
        out.insert(d, k);
    }
    Ok(out)
}

/// Lowering generators taking `w ∉ J(d)` to a nonzero class in degree 0,
/// applied right to left.
pub fn radical_witness(m: &GradedModule, j: &Graded, d: i64, w: &SparseVec) -> Result<Option<Vec<Gen>>, ModuleError> {
    if j[&d].contains(w) {
        return Ok(None);
    }
    if d == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut acts = Actions::new(m);
    for g in m.lowering_gens(d) {
        let t = d + g.degree;
        let image = acts.get(g, d)?.apply_sparse(w);
        if !j[&t].contains(&image) {
            let mut path = radical_witness(m, j, t, &image)?.expect("not in the radical");
            path.insert(0, g);
            return Ok(Some(path));
        }
    }
    unreachable!("vector outside the radical has a lowering image outside it")
}

/// `L(U) = M(U)/J(U)`, with `W(U)` checked to lie in `J(U)` and the
/// relations checked to be a submodule.
pub fn build_l(ctx: &ModuleContext, u: &LaModule, n: i64) -> Result<QuotientModule, ModuleError> {
    let parent = ctx.induce_m(u, n)?;
    let relations = radical_j(&parent, &zero_relations(&parent)?)?;
    let mut r = ViolationReport::new();
    let wu = build_wu(&ctx.algebroid, &parent)?;
    for (d, s) in &wu {
        for (i, row) in s.basis_rows().iter().enumerate() {
            if !relations[d].contains(row) {
                r.push("criterion-e-generators", vec![*d, i as i64], crate::pbw::dense_of(row, s.ambient()));
            }
        }
    }
    let q = QuotientModule { parent, relations, kind: QuotientKind::L };
    r.extend(check_submodule(&q)?);
    if !r.is_empty() {
        return Err(ModuleError::Criterion(r));
    }
    Ok(q)
}

/// `y·R(d) ⊆ R(d + deg y)` for every generator `y` in the window.
pub fn check_submodule(q: &QuotientModule) -> Result<ViolationReport, ModuleError> {
    let m = &q.parent;
    let mut acts = Actions::new(m);
    let mut r = ViolationReport::new();
    let top = m.max_degree();
    for (&d, s) in &q.relations {
        for g in m.gens_within(top) {
            let t = d + g.degree;
            if t < 0 || t > top {
                continue;
            }
            for (i, row) in s.basis_rows().iter().enumerate() {
                let image = acts.get(g, d)?.apply_sparse(row);
                if !q.relations[&t].contains(&image) {
                    let idx = vec![d, i as i64, g.degree, g.index as i64];
                    r.push("submodule", idx, image.into_values().collect());
                }
            }
        }
    }
    Ok(r)
}

/// Representation identity on the parent plus the submodule property of the
/// relations, so the quotient is a representation.
pub fn check_quotient(q: &QuotientModule, window: i64) -> Result<ViolationReport, ModuleError> {
    let mut r = pbw::check_representation(&q.parent, window, q.max_degree())?;
    r.extend(check_submodule(q)?);
    Ok(r)
}

/// The degree-zero piece modulo `rel` as a module for `B/A∂A`, with
/// `a·w = a(-1)w` and `b·w = b(0)w`. Images are read in `dst` modulo
/// `dst_rel`, which must induce an isomorphism from the source quotient.
pub fn top_from_pieces(
    ctx: &ModuleContext,
    m: &GradedModule,
    src: (&Piece, &Subspace),
    dst: (&Piece, &Subspace),
) -> Result<LaModule, ModuleError> {
    let (sp, srel) = src;
    let (dp, drel) = dst;
    let free = srel.free_columns();
    let n = free.len();
    if n == 0 {
        return Err(ModuleError::ZeroTop);
    }
    let to_dst = |v: &ModVec| -> Result<Vec<Scalar>, ModuleError> { Ok(drel.quotient_coords(&coords(dp, v)?)) };
    // inclusion of the source quotient basis into the destination quotient
    let mut incl = Matrix::zeros(drel.ambient() - drel.dim(), n);
    for (k, &f) in free.iter().enumerate() {
        for (i, x) in to_dst(&unit_vec(sp, f))?.into_iter().enumerate() {
            incl.set(i, k, x);
        }
    }
    let inv = incl.inverse().ok_or(ModuleError::TopMismatch)?;
    let op = |x: &crate::looplie::NormalLoopElement| -> Result<Matrix, ModuleError> {
        let mut out = Matrix::zeros(n, n);
        for (k, &f) in free.iter().enumerate() {
            let y = inv.apply(&to_dst(&m.act(x, &unit_vec(sp, f)))?);
            for (i, s) in y.into_iter().enumerate() {
                out.set(i, k, s);
            }
        }
        Ok(out)
    };
    let v = &ctx.algebroid;
    let g = &ctx.lie_algebroid;
    let lift = v.a_partial_a().free_columns();
    let mut a_act = Bilinear::zeros(v.dim_a(), n, n);
    for a in 0..v.dim_a() {
        fill(&mut a_act, a, &op(&ctx.lie.mode(a, -1))?);
    }
    let mut g_act = Bilinear::zeros(g.dim_g, n, n);
    for (j, &b) in lift.iter().enumerate() {
        fill(&mut g_act, j, &op(&ctx.lie.mode(v.dim_a() + b, 0))?);
    }
    let module = LaModule { dim: n, g_act, a_act };
    let r = check_la_module(g, &module)?;
    if !r.is_empty() {
        return Err(ModuleError::TopAxioms(r));
    }
    Ok(module)
}

fn fill(t: &mut Bilinear, i: usize, m: &Matrix) {
    for c in 0..m.cols() {
        for (r, x) in m.column(c) {
            t.set(i, c, r, x);
        }
    }
}

/// Top-level Lie-algebroid module of a quotient of `M(U)`.
pub fn top_extract(ctx: &ModuleContext, q: &QuotientModule) -> Result<LaModule, ModuleError> {
    let p = q.parent.piece(0)?;
    top_from_pieces(ctx, &q.parent, (&p, &q.relations[&0]), (&p, &q.relations[&0]))
}

/// Top-level module of `V_B`, read from the degree-zero slices at caps `cap`
/// and `cap + 1`.
pub fn top_extract_vb(ctx: &ModuleContext, vl: &GradedModule, eg: &crate::vb::EGenerators, cap: usize, margin: usize) -> Result<LaModule, ModuleError> {
    let slice = |c: usize| crate::vb::build_ib_slice(vl, eg, 0, c, margin).map_err(|e| match e {
        crate::vb::VbError::Pbw(p) => ModuleError::Pbw(p),
        _ => ModuleError::TopMismatch,
    });
    let (s0, s1) = (slice(cap)?, slice(cap + 1)?);
    let (p0, p1) = (vl.piece_capped(0, cap)?, vl.piece_capped(0, cap + 1)?);
    top_from_pieces(ctx, vl, (&p0, &s0.subspace), (&p1, &s1.subspace))
}

/// Verdict of the within-window graded simplicity test.
#[derive(Clone, Debug)]
pub struct GradedSimplicity {
    pub radical_zero: bool,
    pub top: Simplicity,
}

impl GradedSimplicity {
    pub fn simple(&self) -> bool {
        self.radical_zero && self.top.simple
    }
}

pub fn graded_simplicity_check(ctx: &ModuleContext, q: &QuotientModule) -> Result<GradedSimplicity, ModuleError> {
    let j = radical_j(&q.parent, &q.relations)?;
    let radical_zero = j.iter().all(|(d, s)| s.dim() == q.relations[d].dim());
    let top = simple_la_modules_check(&top_extract(ctx, q)?);
    Ok(GradedSimplicity { radical_zero, top })
}

/// Equal graded dimensions and isomorphic tops.
pub fn isomorphic(ctx: &ModuleContext, a: &QuotientModule, b: &QuotientModule) -> Result<bool, ModuleError> {
    if a.dims()? != b.dims()? {
        return Ok(false);
    }
    let (ta, tb) = (top_extract(ctx, a)?, top_extract(ctx, b)?);
    Ok(find_isomorphism(&ta.operators(), &tb.operators(), ta.dim, tb.dim).is_some())
}

/// Outcome of the classification round-trip over a catalogue of tops.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub dims: Vec<Vec<usize>>,
    /// Per entry: `top_extract(L(U)) ≅ U`.
    pub top_recovered: Vec<bool>,
    /// Per entry: `L(U)` passes the graded simplicity test.
    pub simple: Vec<bool>,
    /// Per entry: rebuilding `L` from the extracted top gives the same dims.
    pub rebuilt: Vec<bool>,
    /// Pairs `(i, j)` found isomorphic.
    pub collisions: Vec<(usize, usize)>,
    /// Per consecutive pair: `L(U_i ⊕ U_j)` is rejected.
    pub sums_rejected: Vec<bool>,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        [&self.top_recovered, &self.simple, &self.rebuilt, &self.sums_rejected].iter().all(|v| v.iter().all(|&b| b))
            && self.collisions.is_empty()
    }
}

pub fn classify_roundtrip(ctx: &ModuleContext, tops: &[LaModule], n: i64) -> Result<RoundTrip, ModuleError> {
    let mut rt = RoundTrip {
        dims: Vec::new(),
        top_recovered: Vec::new(),
        simple: Vec::new(),
        rebuilt: Vec::new(),
        collisions: Vec::new(),
        sums_rejected: Vec::new(),
    };
    let mut built = Vec::new();
    for u in tops {
        let l = build_l(ctx, u, n)?;
        let top = top_extract(ctx, &l)?;
        rt.top_recovered.push(find_isomorphism(&top.operators(), &u.operators(), top.dim, u.dim).is_some());
        rt.simple.push(graded_simplicity_check(ctx, &l)?.simple());
        rt.rebuilt.push(build_l(ctx, &top, n)?.dims()? == l.dims()?);
        rt.dims.push(l.dims()?);
        built.push(l);
    }
    for i in 0..built.len() {
        for j in i + 1..built.len() {
            if isomorphic(ctx, &built[i], &built[j])? {
                rt.collisions.push((i, j));
            }
        }
    }
    for w in tops.windows(2) {
        let l = build_l(ctx, &w[0].direct_sum(&w[1]), n)?;
        rt.sums_rejected.push(!graded_simplicity_check(ctx, &l)?.simple());
    }
    Ok(rt)
}

/// The vectors killed (modulo `relations`) by every coefficient of every
/// `E`-generator, with conditions read up to the module's top degree, are
/// stable under generators for all degrees up to `n`. Needs
/// `max_degree ≥ 2n`.
pub fn annihilator_check(v: &VertexAlgebroid, m: &GradedModule, relations: &Graded, n: i64) -> Result<ViolationReport, ModuleError> {
    let top = m.max_degree();
    let mut ann = Graded::new();
    for d in 0..=n {
        let piece = m.piece(d)?;
        let mut rows = Vec::new();
        for g in EGen::all(v) {
            for t in 0..=top {
                let k = d + g.weight() - 1 - t;
                let target = m.piece(t)?;
                let rel = relations.get(&t).cloned().unwrap_or_else(|| Subspace::zero(target.dim()));
                let mut qm = Matrix::zeros(target.dim() - rel.dim(), piece.dim());
                for c in 0..piece.dim() {
                    let y = coords(&target, &e_coefficient(v, m, g, k, &unit_vec(&piece, c), d))?;
                    for (i, x) in rel.quotient_coords(&y).into_iter().enumerate() {
                        if !x.is_zero() {
                            qm.set(i, c, x);
                        }
                    }
                }
                rows.extend(qm.row_iter().filter(|r| !r.is_empty()).cloned());
            }
        }
        ann.insert(d, kernel(&Matrix::from_sparse_rows(piece.dim(), rows)));
    }
    let mut acts = Actions::new(m);
    let mut r = ViolationReport::new();
    for d in 0..=n {
        for g in m.gens_within(n) {
            let t = d + g.degree;
            if t < 0 || t > n {
                continue;
            }
            for (i, row) in ann[&d].basis_rows().iter().enumerate() {
                let image = acts.get(g, d)?.apply_sparse(row);
                if !ann[&t].contains(&image) {
                    r.push("annihilator-submodule", vec![d, i as i64, g.degree, g.index as i64], image.into_values().collect());
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

    fn ctx(v: &VertexAlgebroid, n: i64) -> ModuleContext {
        let lie = Arc::new(build_loop_lie(&v.to_tca().unwrap(), n).unwrap());
        ModuleContext::new(v, lie).unwrap()
    }

    fn heis_char(c: &ModuleContext, lambda: i64) -> LaModule {
        catalog::character(&c.lie_algebroid, &[q(lambda)])
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
    fn heisenberg_modules_agree() {
        let c = ctx(&catalog::heisenberg_algebroid(), 5);
        let want: Vec<usize> = (0..=5).map(partitions).collect();
        for lambda in [0, 1] {
            let u = heis_char(&c, lambda);
            let m = build_m(&c, &u, 5).unwrap();
            assert!(build_wu(&c.algebroid, &m.parent).unwrap().values().all(Subspace::is_zero));
            assert_eq!(m.dims().unwrap(), want);
            assert_eq!(build_mb(&c, &u, 5).unwrap().dims().unwrap(), want);
            let l = build_l(&c, &u, 5).unwrap();
            assert_eq!(l.dims().unwrap(), want);
            assert!(l.relations.values().all(Subspace::is_zero));
            assert!(graded_simplicity_check(&c, &l).unwrap().simple());
        }
    }

    #[test]
    fn sl2_zero_form_collapses() {
        let c = ctx(&catalog::sl2_algebroid(q(0)), 3);
        let u = catalog::character(&c.lie_algebroid, &[q(0), q(0), q(0)]);
        let l = build_l(&c, &u, 3).unwrap();
        assert_eq!(l.dims().unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(l.relations[&1].dim(), 3);
    }

    #[test]
    fn degenerate_heisenberg_has_radical() {
        let mut v = catalog::heisenberg_algebroid();
        v.pair.set(0, 0, 0, q(0));
        let c = ctx(&v, 3);
        let u = heis_char(&c, 1);
        let m = build_m(&c, &u, 3).unwrap();
        let g = graded_simplicity_check(&c, &m).unwrap();
        assert!(!g.radical_zero && !g.simple());
        let j = radical_j(&m.parent, &m.relations).unwrap();
        assert_eq!(j[&1].dim(), 1);
        let mut r1 = SparseVec::new();
        r1.insert(0, q(1));
        assert_eq!(radical_witness(&m.parent, &j, 1, &r1).unwrap(), None);
        // with the form restored, b(-1)u is detected by b(1)
        let c = ctx(&catalog::heisenberg_algebroid(), 3);
        let m = build_m(&c, &heis_char(&c, 1), 3).unwrap();
        let j = radical_j(&m.parent, &m.relations).unwrap();
        let path = radical_witness(&m.parent, &j, 1, &r1).unwrap().unwrap();
        assert_eq!(path, vec![Gen { degree: -1, index: 0 }]);
    }

    #[test]
    fn broken_top_is_rejected() {
        let c = ctx(&catalog::line_algebroid(), 2);
        let mut u = c.lie_algebroid.base_module();
        for w in 0..u.dim {
            for k in 0..u.dim {
                u.a_act.set(1, w, k, q(i64::from(w == k)));
            }
        }
        assert!(matches!(build_mb(&c, &u, 2), Err(ModuleError::NotAlgebroidModule(_))));
        assert!(!build_wu(&c.algebroid, &c.induce_m(&u, 2).unwrap()).unwrap()[&0].is_zero());
    }

    #[test]
    fn line_algebroid_base_module() {
        let c = ctx(&catalog::line_algebroid(), 3);
        let u = c.lie_algebroid.base_module();
        let mb = build_mb(&c, &u, 3).unwrap();
        assert!(check_quotient(&mb, 2).unwrap().is_empty());
        let top = top_extract(&c, &mb).unwrap();
        assert!(find_isomorphism(&top.operators(), &u.operators(), top.dim, u.dim).is_some());
        let l = build_l(&c, &u, 3).unwrap();
        assert!(check_quotient(&l, 2).unwrap().is_empty());
        let m = c.induce_m(&u, 4).unwrap();
        assert!(annihilator_check(&c.algebroid, &m, &zero_relations(&m).unwrap(), 2).unwrap().is_empty());
    }

    #[test]
    fn close_submodule_examples() {
        let c = ctx(&catalog::heisenberg_algebroid(), 3);
        let m = c.induce_m(&heis_char(&c, 1), 3).unwrap();
        let zero = zero_relations(&m).unwrap();
        let closed = close_submodule(&m, &zero).unwrap();
        assert!(closed.values().all(Subspace::is_zero));
        let mut seed = Graded::new();
        seed.insert(0, Subspace::full(1));
        let all = close_submodule(&m, &seed).unwrap();
        assert!(all.values().all(Subspace::is_full));
    }

    #[test]
    fn direct_sum_catalogue_roundtrip() {
        let v = catalog::heisenberg_algebroid().direct_sum(&catalog::sl2_algebroid(q(1)));
        let c = ctx(&v, 4);
        let g = &c.lie_algebroid;
        let with_unit = |e: [i64; 2], vals: [i64; 4]| {
            let mut u = catalog::character(g, &vals.map(q));
            for (a, x) in e.iter().enumerate() {
                u.a_act.set(a, 0, 0, q(*x));
            }
            u
        };
        let tops = [with_unit([1, 0], [0, 0, 0, 0]), with_unit([1, 0], [1, 0, 0, 0]), with_unit([0, 1], [0, 0, 0, 0])];
        let rt = classify_roundtrip(&c, &tops, 4).unwrap();
        assert_eq!(rt.dims, vec![vec![1, 1, 2, 3, 5], vec![1, 1, 2, 3, 5], vec![1, 3, 4, 7, 13]]);
        assert!(rt.passed(), "{rt:?}");
    }

    #[test]
    fn top_of_vb_is_the_base_algebra() {
        for v in [catalog::heisenberg_algebroid(), catalog::line_algebroid()] {
            let c = ctx(&v, 2);
            let vl = GradedModule::build_vl(c.lie.clone(), 2, 6);
            let eg = crate::vb::build_e(&v, &vl).unwrap();
            let top = top_extract_vb(&c, &vl, &eg, 3, 2).unwrap();
            let base = c.lie_algebroid.base_module();
            assert!(find_isomorphism(&top.operators(), &base.operators(), top.dim, base.dim).is_some());
        }
    }
}
