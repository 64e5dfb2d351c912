//! Standard small examples used by tests, fixtures and the fuzzer.

use crate::algebroid::{lie_algebroid_quotient, CommAlgebra, LaModule, LieAlgebroid, VertexAlgebroid};
use crate::linalg::{q, Bilinear, Matrix, Scalar};
use crate::tca::{from_quadratic_lie, Tca};

/// sl₂ in the basis `e, h, f` with its trace form.
pub fn sl2_data() -> (Bilinear, Matrix) {
    let mut br = Bilinear::zeros(3, 3, 3);
    let (e, h, f) = (0, 1, 2);
    for (x, y, z, c) in [(e, f, h, 1), (h, e, e, 2), (h, f, f, -2)] {
        br.set(x, y, z, q(c));
        br.set(y, x, z, q(-c));
    }
    let mut form = Matrix::zeros(3, 3);
    form.set(e, f, q(1));
    form.set(f, e, q(1));
    form.set(h, h, q(2));
    (br, form)
}

/// `ℚ ⊕ ℚb` with `b₁b = c`.
pub fn heisenberg(c: Scalar) -> Tca {
    let mut form = Matrix::zeros(1, 1);
    form.set(0, 0, c);
    from_quadratic_lie(&Bilinear::zeros(1, 1, 1), &form).expect("heisenberg")
}

/// `ℚ ⊕ sl₂` with `c` times the trace form.
pub fn sl2(c: Scalar) -> Tca {
    let (br, form) = sl2_data();
    from_quadratic_lie(&br, &form.scale(&c)).expect("sl2")
}

/// Abelian `g` of dimension `n` with the given symmetric form.
pub fn abelian(form: &Matrix) -> Tca {
    let n = form.rows();
    from_quadratic_lie(&Bilinear::zeros(n, n, n), form).expect("abelian")
}

/// `[x,y] = y` with `⟨x,x⟩ = c`.
pub fn solvable2(c: Scalar) -> Tca {
    let mut br = Bilinear::zeros(2, 2, 2);
    br.set(0, 1, 1, q(1));
    br.set(1, 0, 1, q(-1));
    let mut form = Matrix::zeros(2, 2);
    form.set(0, 0, c);
    from_quadratic_lie(&br, &form).expect("solvable2")
}

/// Heisenberg Lie algebra `[p,q] = z` with a symmetric form on `p, q`.
pub fn heisenberg_lie(pp: Scalar, pq: Scalar, qq: Scalar) -> Tca {
    let mut br = Bilinear::zeros(3, 3, 3);
    br.set(0, 1, 2, q(1));
    br.set(1, 0, 2, q(-1));
    let mut form = Matrix::zeros(3, 3);
    form.set(0, 0, pp);
    form.set(0, 1, pq.clone());
    form.set(1, 0, pq);
    form.set(1, 1, qq);
    from_quadratic_lie(&br, &form).expect("heisenberg_lie")
}

fn algebroid_from_lie(br: &Bilinear, form: &Matrix) -> VertexAlgebroid {
    let n = form.rows();
    let mut v = VertexAlgebroid::zero(CommAlgebra::scalars(), n);
    v.bracket = br.clone();
    for i in 0..n {
        for j in 0..n {
            v.pair.set(i, j, 0, form.get(i, j));
        }
    }
    v
}

/// `A = ℚe`, `B = ℚb`, `⟨b,b⟩ = e`.
pub fn heisenberg_algebroid() -> VertexAlgebroid {
    let mut form = Matrix::zeros(1, 1);
    form.set(0, 0, q(1));
    algebroid_from_lie(&Bilinear::zeros(1, 1, 1), &form)
}

/// `A = ℚe`, `B = sl₂`, pairing `c` times the trace form.
pub fn sl2_algebroid(c: Scalar) -> VertexAlgebroid {
    let (br, form) = sl2_data();
    algebroid_from_lie(&br, &form.scale(&c))
}

/// `ℚ[x]/(x²)` in the basis `e, x`.
pub fn dual_numbers() -> CommAlgebra {
    let mut mult = Bilinear::zeros(2, 2, 2);
    mult.set(0, 0, 0, q(1));
    mult.set(0, 1, 1, q(1));
    mult.set(1, 0, 1, q(1));
    CommAlgebra { dim: 2, mult, unit: vec![q(1), q(0)] }
}

/// Over `A = ℚ[x]/(x²)`: `B` has basis `d, ∂x` with `π(d) = x d/dx`.
pub fn line_algebroid() -> VertexAlgebroid {
    let (d, dx) = (0, 1);
    let mut v = VertexAlgebroid::zero(dual_numbers(), 2);
    v.act.set(1, d, dx, q(-1));
    v.act.set(1, dx, dx, q(0));
    v.pi.set(d, 1, 1, q(1));
    v.pair.set(d, dx, 1, q(1));
    v.pair.set(dx, d, 1, q(1));
    v.bracket.set(d, dx, dx, q(1));
    v.partial.set(dx, 1, q(1));
    v
}

/// `ℚ[x]/(x³)` in the basis `e, x, x²`.
pub fn truncated_cubic() -> CommAlgebra {
    let mut mult = Bilinear::zeros(3, 3, 3);
    for i in 0..3 {
        for j in 0..3 {
            if i + j < 3 {
                mult.set(i, j, i + j, q(1));
            }
        }
    }
    CommAlgebra { dim: 3, mult, unit: vec![q(1), q(0), q(0)] }
}

/// Over `A = ℚ[x]/(x³)` with `B` spanned by `E, F, dx, x dx`; the
/// action-associator has nonzero right-hand side here.
pub fn truncated_line() -> VertexAlgebroid {
    let (e_, f_, dx, xdx) = (0, 1, 2, 3);
    let (x, y) = (1, 2);
    let mut v = VertexAlgebroid::zero(truncated_cubic(), 4);
    v.partial.set(dx, x, q(1));
    v.partial.set(xdx, y, q(2));
    v.pi.set(e_, x, x, q(1));
    v.pi.set(e_, y, y, q(2));
    v.pi.set(f_, x, y, q(1));
    for (a, b, out, c) in
        [(x, e_, f_, 1), (x, f_, xdx, 1), (x, dx, xdx, 1), (y, e_, xdx, -1)]
    {
        v.act.set(a, b, out, q(c));
    }
    for (a, b, out, c) in [
        (e_, f_, f_, 1),
        (f_, e_, f_, -1),
        (f_, e_, dx, 2),
        (e_, dx, dx, 1),
        (e_, xdx, xdx, 2),
        (f_, dx, xdx, 2),
    ] {
        v.bracket.set(a, b, out, q(c));
    }
    for (a, b, out, c) in [(e_, e_, 0, 3), (e_, f_, x, 2), (e_, dx, x, 1), (e_, xdx, y, 1), (f_, dx, y, 1)] {
        v.pair.set(a, b, out, q(c));
        v.pair.set(b, a, out, q(c));
    }
    v
}

/// One-dimensional module over a Lie algebroid with `A = ℚe`; `g` acts by `values`.
pub fn character(g: &LieAlgebroid, values: &[Scalar]) -> LaModule {
    let mut g_act = Bilinear::zeros(g.dim_g, 1, 1);
    for (u, x) in values.iter().enumerate() {
        g_act.set(u, 0, 0, x.clone());
    }
    let mut a_act = Bilinear::zeros(g.a.dim, 1, 1);
    for a in 0..g.a.dim {
        a_act.set(a, 0, 0, g.a.unit[a].clone());
    }
    LaModule { dim: 1, g_act, a_act }
}

/// Adjoint module of a Lie algebroid over `A = ℚe`.
pub fn adjoint(g: &LieAlgebroid) -> LaModule {
    let n = g.dim_g;
    let mut a_act = Bilinear::zeros(g.a.dim, n, n);
    for a in 0..g.a.dim {
        for w in 0..n {
            a_act.set(a, w, w, g.a.unit[a].clone());
        }
    }
    LaModule { dim: n, g_act: g.bracket.clone(), a_act }
}

/// Lie algebroid of a catalogue algebroid, for tests.
pub fn quotient_of(v: &VertexAlgebroid) -> LieAlgebroid {
    lie_algebroid_quotient(v).expect("valid algebroid").0
}
