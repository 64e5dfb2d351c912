//! The quotient `V_B = V_L / I_B`, where `I_B` is generated by
//! `E = {e − 1, a(-1)a′ − aa′, a(-1)b − ab}`, computed degree by degree inside
//! an A-weight truncation of `V_L`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebroid::VertexAlgebroid;
use crate::linalg::{q, Scalar, SparseVec, Subspace};
use crate::pbw::{axpy, GradedModule, ModVec, PbwError, PbwMonomial};
use crate::report::ViolationReport;

pub const DEFAULT_MARGIN: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VbError {
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error("algebroid has dimensions {got:?}, the module was built for {want:?}")]
    Shape { got: (usize, usize), want: (usize, usize) },
    #[error("generators of I_B are not closed:\n{0}")]
    Closure(ViolationReport),
}

/// `E₀ ⊂ V_L(0)` and `E₁ ⊂ V_L(1)`.
#[derive(Clone, Debug)]
pub struct EGenerators {
    pub e0: Vec<ModVec>,
    pub e1: Vec<ModVec>,
}

impl EGenerators {
    pub fn by_degree(&self, d: i64) -> &[ModVec] {
        match d {
            0 => &self.e0,
            1 => &self.e1,
            _ => &[],
        }
    }

    /// `(degree, vector)` for every generator.
    pub fn all(&self) -> impl Iterator<Item = (i64, &ModVec)> {
        self.e0.iter().map(|v| (0, v)).chain(self.e1.iter().map(|v| (1, v)))
    }
}

/// Span of finitely many module vectors, indexed by the monomials they use.
#[derive(Clone, Debug, Default)]
pub struct LocalSpan {
    cols: BTreeMap<PbwMonomial, usize>,
    rows: Vec<SparseVec>,
}

impl LocalSpan {
    pub fn new<'a, I: IntoIterator<Item = &'a ModVec>>(vs: I) -> Self {
        let mut s = LocalSpan::default();
        for v in vs {
            let r = s.index(v);
            s.rows.push(r);
        }
        s
    }

    fn index(&mut self, v: &ModVec) -> SparseVec {
        v.iter()
            .map(|(m, x)| {
                let n = self.cols.len();
                (*self.cols.entry(m.clone()).or_insert(n), x.clone())
            })
            .collect()
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        let mut s = self.clone();
        let target = s.index(v);
        Subspace::from_rows(s.cols.len(), s.rows).contains(&target)
    }

    pub fn dim(&self) -> usize {
        Subspace::from_rows(self.cols.len(), self.rows.iter().cloned()).dim()
    }
}

fn check_shape(v: &VertexAlgebroid, vl: &GradedModule) -> Result<(), VbError> {
    let c = vl.lie().tca();
    if (c.dim0, c.dim1) != (v.dim_a(), v.dim_b) {
        return Err(VbError::Shape { got: (v.dim_a(), v.dim_b), want: (c.dim0, c.dim1) });
    }
    Ok(())
}

fn sum_modes(vl: &GradedModule, coeffs: &[Scalar], offset: usize, w: &ModVec) -> ModVec {
    let mut out = ModVec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            axpy(&mut out, c, &vl.act_mode(offset + k, -1, w));
        }
    }
    out
}

/// Builds `E` and checks `v(n)E ⊆ E` for `n ≥ 0`, `D E₀ ⊆ E₁` and
/// `B(-1)E₀ ⊆ A(-1)E₁ + E₁`.
pub fn build_e(v: &VertexAlgebroid, vl: &GradedModule) -> Result<EGenerators, VbError> {
    check_shape(v, vl)?;
    if !vl.is_vacuum() {
        return Err(PbwError::NotVacuum.into());
    }
    let (da, db) = (v.dim_a(), v.dim_b);
    let one = vl.vacuum();
    let mut e0 = vec![{
        let mut x = sum_modes(vl, &v.a.unit, 0, &one);
        axpy(&mut x, &q(-1), &one);
        x
    }];
    for i in 0..da {
        for j in i..da {
            let mut x = vl.act_mode(i, -1, &vl.act_mode(j, -1, &one));
            axpy(&mut x, &q(-1), &sum_modes(vl, v.a.mult.basis(i, j), 0, &one));
            e0.push(x);
        }
    }
    let mut e1 = Vec::new();
    for i in 0..da {
        for j in 0..db {
            let mut x = vl.act_mode(i, -1, &vl.act_mode(da + j, -1, &one));
            axpy(&mut x, &q(-1), &sum_modes(vl, v.act.basis(i, j), da, &one));
            e1.push(x);
        }
    }
    let eg = EGenerators { e0, e1 };
    let r = closure_report(vl, &eg)?;
    if !r.is_empty() {
        return Err(VbError::Closure(r));
    }
    Ok(eg)
}

fn closure_report(vl: &GradedModule, eg: &EGenerators) -> Result<ViolationReport, VbError> {
    let c = vl.lie().tca();
    let spans = [LocalSpan::new(&eg.e0), LocalSpan::new(&eg.e1)];
    let mut r = ViolationReport::new();
    for (d, cv) in eg.all() {
        let ci = eg.by_degree(d).iter().position(|x| std::ptr::eq(x, cv)).unwrap_or(0) as i64;
        for u in 0..c.total_dim() {
            let shift = i64::from(u < c.dim0);
            for n in 0..=d + 1 {
                let target = d - n - shift;
                if target < 0 {
                    continue;
                }
                let x = vl.act_mode(u, n, cv);
                if !spans[target as usize].contains(&x) {
                    r.push("closure-nonnegative-mode", vec![d, ci, u as i64, n], x.values().cloned().collect());
                }
            }
        }
    }
    let mut ae1: Vec<ModVec> = eg.e1.clone();
    for i in 0..c.dim0 {
        ae1.extend(eg.e1.iter().map(|x| vl.act_mode(i, -1, x)));
    }
    let ae1 = LocalSpan::new(&ae1);
    for (ci, cv) in eg.e0.iter().enumerate() {
        let dx = vl.d_operator(cv)?;
        if !spans[1].contains(&dx) {
            r.push("closure-d", vec![ci as i64], dx.values().cloned().collect());
        }
        for b in 0..c.dim1 {
            let x = vl.act_mode(c.dim0 + b, -1, cv);
            if !ae1.contains(&x) {
                r.push("closure-b-minus-one", vec![ci as i64, b as i64], x.values().cloned().collect());
            }
        }
    }
    Ok(r)
}

/// `I_B(n)` intersected with the A-weight-`cap` part of `V_L(n)`.
#[derive(Clone, Debug)]
pub struct IdealSlice {
    pub degree: i64,
    pub cap: usize,
    /// Dimension of the capped piece.
    pub piece_dim: usize,
    /// In the coordinates of `vl.piece_capped(degree, cap)`.
    pub subspace: Subspace,
    /// The quotient dimension agrees at caps `cap − 1` and `cap`.
    pub stabilized: bool,
}

impl IdealSlice {
    pub fn quotient_dim(&self) -> usize {
        self.piece_dim - self.subspace.dim()
    }
}

fn raw_slice(vl: &GradedModule, eg: &EGenerators, n: i64, cap: usize, margin: usize) -> Result<Subspace, VbError> {
    let piece = vl.piece_capped(n, cap)?;
    let mut spanning: Vec<ModVec> = Vec::new();
    for (d, c) in eg.all() {
        let mut dc = c.clone();
        for j in 0..=(n - d) {
            if j > 0 {
                dc = vl.d_operator(&dc)?;
            }
            if dc.is_empty() {
                break;
            }
            for x in vl.enumerate_capped(n - d - j, cap + margin)? {
                if x.tail == 0 {
                    spanning.push(vl.act_monomial(&x.factors, &dc));
                }
            }
        }
    }
    let mut beyond: BTreeMap<&PbwMonomial, usize> = BTreeMap::new();
    for v in &spanning {
        for m in v.keys() {
            if m.a_weight() > cap {
                let k = beyond.len();
                beyond.entry(m).or_insert(k);
            }
        }
    }
    let nb = beyond.len();
    let rows = spanning.iter().map(|v| {
        v.iter()
            .map(|(m, x)| {
                let col = match beyond.get(m) {
                    Some(&k) => k,
                    None => nb + piece.position(m).expect("capped monomial in piece"),
                };
                (col, x.clone())
            })
            .collect::<SparseVec>()
    });
    let full = Subspace::from_rows(nb + piece.dim(), rows);
    let inside = full
        .basis_rows()
        .iter()
        .zip(full.pivots())
        .filter(|(_, &p)| p >= nb)
        .map(|(r, _)| r.iter().map(|(k, x)| (k - nb, x.clone())).collect::<SparseVec>());
    Ok(Subspace::from_rows(piece.dim(), inside))
}

/// Slice of `I_B(n)` at cap `cap`, spanned by `x·Dʲ·c` with `x` of A-weight at
/// most `cap + margin`.
pub fn build_ib_slice(vl: &GradedModule, eg: &EGenerators, n: i64, cap: usize, margin: usize) -> Result<IdealSlice, VbError> {
    let subspace = raw_slice(vl, eg, n, cap, margin)?;
    let piece_dim = vl.piece_capped(n, cap)?.dim();
    let stabilized = if cap == 0 {
        false
    } else {
        let prev = raw_slice(vl, eg, n, cap - 1, margin)?;
        vl.piece_capped(n, cap - 1)?.dim() - prev.dim() == piece_dim - subspace.dim()
    };
    Ok(IdealSlice { degree: n, cap, piece_dim, subspace, stabilized })
}

fn image_subspace(vl: &GradedModule, n: i64, cap: usize, gens: std::ops::Range<usize>) -> Result<Subspace, VbError> {
    let piece = vl.piece_capped(n, cap)?;
    let one = vl.vacuum();
    let rows: Option<Vec<SparseVec>> = gens.map(|i| piece.coords(&vl.act_mode(i, -1, &one))).collect();
    let rows = rows.ok_or(PbwError::Cap { weight: 1, cap })?;
    Ok(Subspace::from_rows(piece.dim(), rows))
}

/// `V_L(0) = I_B(0) ⊕ A` and `V_L(1) = I_B(1) ⊕ B` within the cap.
pub fn check_degree01_decomposition(vl: &GradedModule, eg: &EGenerators, cap: usize, margin: usize) -> Result<ViolationReport, VbError> {
    let c = vl.lie().tca();
    let mut r = ViolationReport::new();
    let images = [(0, 0..c.dim0), (1, c.dim0..c.total_dim())];
    for (n, gens) in images {
        if n > vl.max_degree() {
            break;
        }
        let want = gens.len();
        let img = image_subspace(vl, n, cap.max(1), gens)?;
        let slice = build_ib_slice(vl, eg, n, cap.max(1), margin)?;
        let dims = |xs: &[usize]| xs.iter().map(|&x| q(x as i64)).collect::<Vec<_>>();
        if img.dim() != want {
            r.push("decomposition-injective", vec![n], dims(&[img.dim(), want]));
        }
        let meet = img.intersect(&slice.subspace).expect("same ambient");
        if !meet.is_zero() {
            r.push("decomposition-intersection", vec![n], dims(&[meet.dim()]));
        }
        let sum = img.sum(&slice.subspace).expect("same ambient");
        if !sum.is_full() {
            r.push("decomposition-sum", vec![n], dims(&[sum.dim(), slice.piece_dim]));
        }
    }
    Ok(r)
}

/// One row of a dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimRow {
    pub degree: i64,
    pub dim: usize,
    pub stabilized: bool,
    /// Number of B-only monomials (`dim A` at degree 0), an upper bound for
    /// the true dimension.
    pub bound: usize,
}

pub fn vb_graded_dims(vl: &GradedModule, eg: &EGenerators, n_max: i64, cap: usize, margin: usize) -> Result<Vec<DimRow>, VbError> {
    (0..=n_max)
        .map(|n| {
            let s = build_ib_slice(vl, eg, n, cap, margin)?;
            let bound = if n == 0 { vl.lie().tca().dim0 } else { vl.enumerate_capped(n, 0)?.len() };
            Ok(DimRow { degree: n, dim: s.quotient_dim(), stabilized: s.stabilized, bound })
        })
        .collect()
}

/// Every capped monomial of `V_L(n)` lies in span(B-only monomials) + slice
/// for `n ≥ 1`, and in the image of `A` plus the slice for `n = 0`.
pub fn spanning_check(vl: &GradedModule, eg: &EGenerators, n: i64, cap: usize, margin: usize) -> Result<bool, VbError> {
    let piece = vl.piece_capped(n, cap)?;
    let slice = build_ib_slice(vl, eg, n, cap, margin)?;
    if n == 0 {
        let img = image_subspace(vl, 0, cap, 0..vl.lie().tca().dim0)?;
        return Ok(img.sum(&slice.subspace).expect("same ambient").is_full());
    }
    let b_only = Subspace::from_rows(
        piece.dim(),
        piece
            .basis
            .iter()
            .enumerate()
            .filter(|(_, m)| m.a_weight() == 0)
            .map(|(i, _)| std::iter::once((i, Scalar::one())).collect()),
    );
    Ok(b_only.sum(&slice.subspace).expect("same ambient").is_full())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::looplie::build_loop_lie;
    use std::sync::Arc;

    fn vl_of(v: &VertexAlgebroid, n: i64, cap: usize) -> GradedModule {
        let lie = Arc::new(build_loop_lie(&v.to_tca().unwrap(), n).unwrap());
        GradedModule::build_vl(lie, n, cap + DEFAULT_MARGIN + 2)
    }

    #[test]
    fn heisenberg_generators() {
        let v = catalog::heisenberg_algebroid();
        let vl = vl_of(&v, 2, 2);
        let eg = build_e(&v, &vl).unwrap();
        assert_eq!((eg.e0.len(), eg.e1.len()), (2, 1));
        let one = vl.vacuum();
        let e1 = vl.act_mode(0, -1, &one);
        let b1 = vl.act_mode(1, -1, &one);
        assert_eq!(eg.e1[0], crate::pbw::mod_sub(&vl.act_mode(0, -1, &b1), &b1));
        assert_eq!(eg.e0[0], crate::pbw::mod_sub(&e1, &one));
    }

    #[test]
    fn zero_algebroid_generators() {
        let v = VertexAlgebroid::zero(crate::algebroid::CommAlgebra::scalars(), 0);
        let vl = vl_of(&v, 2, 2);
        let eg = build_e(&v, &vl).unwrap();
        assert_eq!(eg.e1.len(), 0);
        let s = build_ib_slice(&vl, &eg, 0, 3, DEFAULT_MARGIN).unwrap();
        assert_eq!((s.piece_dim, s.quotient_dim()), (4, 1));
    }

    #[test]
    fn heisenberg_slice_at_zero() {
        let v = catalog::heisenberg_algebroid();
        let vl = vl_of(&v, 2, 3);
        let eg = build_e(&v, &vl).unwrap();
        let s = build_ib_slice(&vl, &eg, 0, 3, DEFAULT_MARGIN).unwrap();
        assert_eq!((s.piece_dim, s.subspace.dim(), s.quotient_dim()), (4, 3, 1));
        assert!(s.stabilized);
        let r = check_degree01_decomposition(&vl, &eg, 4, DEFAULT_MARGIN).unwrap();
        assert!(r.is_empty(), "{r}");
    }

    #[test]
    fn sl2_degree_one() {
        let v = catalog::sl2_algebroid(q(1));
        let vl = vl_of(&v, 2, 2);
        let eg = build_e(&v, &vl).unwrap();
        for cap in 1..=2 {
            assert_eq!(build_ib_slice(&vl, &eg, 1, cap, DEFAULT_MARGIN).unwrap().quotient_dim(), 3);
        }
        assert!(check_degree01_decomposition(&vl, &eg, 2, DEFAULT_MARGIN).unwrap().is_empty());
        assert!(spanning_check(&vl, &eg, 2, 2, DEFAULT_MARGIN).unwrap());
    }

    #[test]
    fn line_algebroid_low_degrees() {
        let v = catalog::line_algebroid();
        let vl = vl_of(&v, 2, 3);
        let eg = build_e(&v, &vl).unwrap();
        let r = check_degree01_decomposition(&vl, &eg, 3, DEFAULT_MARGIN).unwrap();
        assert!(r.is_empty(), "{r}");
        for n in 0..=2 {
            assert!(spanning_check(&vl, &eg, n, 3, DEFAULT_MARGIN).unwrap());
        }
        let dims = vb_graded_dims(&vl, &eg, 1, 3, DEFAULT_MARGIN).unwrap();
        assert_eq!(dims.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn slices_grow_with_cap() {
        let v = catalog::heisenberg_algebroid();
        let vl = vl_of(&v, 3, 3);
        let eg = build_e(&v, &vl).unwrap();
        for n in 0..=3 {
            let dims: Vec<usize> = (0..=3).map(|w| build_ib_slice(&vl, &eg, n, w, DEFAULT_MARGIN).unwrap().subspace.dim()).collect();
            assert!(dims.windows(2).all(|p| p[0] <= p[1]), "{dims:?}");
        }
    }

    #[test]
    fn heisenberg_tower() {
        let v = catalog::heisenberg_algebroid();
        let vl = vl_of(&v, 6, 3);
        let eg = build_e(&v, &vl).unwrap();
        let rows = vb_graded_dims(&vl, &eg, 6, 3, DEFAULT_MARGIN).unwrap();
        assert_eq!(rows.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![1, 1, 2, 3, 5, 7, 11]);
        assert!(rows.iter().all(|r| r.stabilized && r.dim <= r.bound));
    }

    #[test]
    fn sl2_tower() {
        let v = catalog::sl2_algebroid(q(1));
        let vl = vl_of(&v, 4, 3);
        let eg = build_e(&v, &vl).unwrap();
        let rows = vb_graded_dims(&vl, &eg, 4, 3, DEFAULT_MARGIN).unwrap();
        assert_eq!(rows.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![1, 3, 9, 22, 51]);
        assert!(rows.iter().all(|r| r.stabilized));
    }
}
