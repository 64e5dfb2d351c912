//! Property tests for the structural invariants of each layer.

use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vertex_algebroid::algebroid::{SignConvention, VertexAlgebroid};
use vertex_algebroid::catalog;
use vertex_algebroid::cli::output::{emit, Config, Format, Report, Section};
use vertex_algebroid::fuzz::{compare, perturb, random_valid_tca};
use vertex_algebroid::linalg::{kernel, parse_scalar, q, qf, rank, rref, Matrix, Scalar, SparseVec, Subspace};
use vertex_algebroid::looplie::{build_loop_lie, hat_partial, RawLoopElement, WindowedLieAlgebra};
use vertex_algebroid::modules::{annihilator_check, build_l, radical_witness, ModuleContext};
use vertex_algebroid::pbw::{check_representation, GradedModule, ModVec};
use vertex_algebroid::report::ViolationReport;
use vertex_algebroid::tca::{decompose_leibniz, lie_quotient};
use vertex_algebroid::vb::{build_e, build_ib_slice, vb_graded_dims};

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let dense: Vec<Vec<Scalar>> = (0..rows).map(|r| (0..cols).map(|c| q(entries[r * cols + c])).collect()).collect();
    Matrix::from_dense(rows, cols, &dense)
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |e| matrix(r, c, &e))
    })
}

fn subspace(ambient: usize, entries: &[i64]) -> Subspace {
    let rows: Vec<SparseVec> = entries
        .chunks(ambient)
        .map(|ch| ch.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, q(*x))).collect())
        .collect();
    Subspace::from_rows(ambient, rows)
}

/// A valid algebroid built from catalogue pieces.
fn catalogue_algebroid(pick: u8, c: i64) -> VertexAlgebroid {
    match pick % 6 {
        0 => catalog::heisenberg_algebroid(),
        1 => catalog::sl2_algebroid(q(c)),
        2 => catalog::line_algebroid(),
        3 => catalog::truncated_line(),
        4 => catalog::heisenberg_algebroid().direct_sum(&catalog::sl2_algebroid(q(c))),
        _ => catalog::heisenberg_algebroid().direct_sum(&catalog::heisenberg_algebroid()),
    }
}

/// Number of `d`-coloured partitions of `n`: coefficient of `q^n` in `∏ (1 − q^k)^{−d}`.
fn coloured_partitions(d: usize, n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for _ in 0..d {
        for k in 1..=n {
            for j in k..=n {
                p[j] += p[j - k];
            }
        }
    }
    p[n]
}

fn character_ops(lie: &WindowedLieAlgebra, values: &[i64]) -> Vec<Matrix> {
    (0..lie.dim(0))
        .map(|i| {
            let mut m = Matrix::zeros(1, 1);
            let x = if i < lie.tca().dim0 { q(1) } else { q(values[(i - lie.tca().dim0) % values.len()]) };
            m.set(0, 0, x);
            m
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let (r, piv) = rref(&m);
        let (rr, piv2) = rref(&r);
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        prop_assert_eq!(rank(&m) + kernel(&m).dim(), m.cols());
        let k = kernel(&m);
        for row in k.basis_rows() {
            prop_assert!(m.apply_sparse(row).is_empty());
        }
    }

    #[test]
    fn grassmann_identity(n in 1usize..6, a in prop::collection::vec(-2i64..=2, 0..20), b in prop::collection::vec(-2i64..=2, 0..20)) {
        let a = &a[..a.len() / n * n];
        let b = &b[..b.len() / n * n];
        let (s1, s2) = (subspace(n, a), subspace(n, b));
        let sum = s1.sum(&s2).unwrap();
        let meet = s1.intersect(&s2).unwrap();
        prop_assert_eq!(s1.dim() + s2.dim(), sum.dim() + meet.dim());
        prop_assert!(s1.is_reduced() && sum.is_reduced() && meet.is_reduced());
        prop_assert!(meet.is_subspace_of(&s1).unwrap() && s1.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn scalars_stay_exact_and_reduced(n in -50i64..50, d in 1i64..50) {
        let x = qf(n, d);
        prop_assert!(x.denom() > &num_bigint::BigInt::zero());
        prop_assert_eq!(parse_scalar(&x.to_string()), Some(x.clone()));
        let y = &x * &x - &x / q(3);
        let reduced = num_rational::BigRational::new(y.numer().clone(), y.denom().clone());
        prop_assert_eq!(reduced.numer(), y.numer());
        prop_assert_eq!(reduced.denom(), y.denom());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn generated_tcas_satisfy_both_axiom_sets(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (label, t) = random_valid_tca(&mut rng);
        prop_assert!(t.check().unwrap().is_empty(), "{}", label);
        prop_assert!(t.check_reduced().unwrap().is_empty(), "{}", label);
        let c = compare(&t).unwrap();
        prop_assert!(c.agrees(), "{}: {:?}", label, c);
    }

    #[test]
    fn perturbed_tcas_agree_across_checkers(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (label, t) = random_valid_tca(&mut rng);
        if let Some((slot, idx, p)) = perturb(&mut rng, &t) {
            let c = compare(&p).unwrap();
            prop_assert_eq!(c.tca_valid, p.check_reduced().unwrap().is_empty());
            prop_assert!(c.agrees(), "{} at {:?}{:?}: {:?}", label, slot, idx, c);
        }
    }

    #[test]
    fn valid_tca_product_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (label, t) = random_valid_tca(&mut rng);
        let n = t.total_dim();
        for u in 0..n {
            for v in 0..n {
                let (eu, ev) = (t.basis(u), t.basis(v));
                let skew = t.prod(0, &eu, &ev).add(&t.prod(0, &ev, &eu));
                prop_assert_eq!(&skew, &t.d(&t.prod(1, &ev, &eu)), "{}", label);
                prop_assert_eq!(t.prod(1, &eu, &ev), t.prod(1, &ev, &eu), "{}", label);
            }
        }
        for a in 0..t.dim0 {
            let da = t.d(&t.basis(a));
            for u in 0..n {
                let eu = t.basis(u);
                prop_assert!(t.prod(0, &da, &eu).concat().iter().all(|x| x.is_zero()), "{}", label);
                let lhs = t.prod(1, &da, &eu);
                let rhs = t.prod(0, &t.basis(a), &eu).scale(&q(-1));
                prop_assert_eq!(lhs, rhs, "{}", label);
            }
        }
        let lq = lie_quotient(&t).unwrap();
        prop_assert!(lq.lie.check().is_empty(), "{}", label);
        prop_assert!(lq.check_module().is_empty(), "{}", label);
    }

    #[test]
    fn loop_algebra_normal_forms(seed in any::<u64>(), coeffs in prop::collection::vec(-2i64..=2, 12)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (label, t) = random_valid_tca(&mut rng);
        let window = 2;
        let w = WindowedLieAlgebra::new(&t, window).unwrap();
        let rank_partial = rank(&t.partial);
        for m in -window..=window {
            let expected = if m == 0 { t.dim0 + t.dim1 - rank_partial } else { t.dim1 };
            prop_assert_eq!(w.dim(m), expected, "{} degree {}", label, m);
            let mut raw = RawLoopElement::zero(&t, m);
            for (i, c) in coeffs.iter().enumerate().take(t.total_dim()) {
                let k = if i < t.dim0 { -m - 1 } else { -m };
                raw = raw.add(&RawLoopElement::basis_mode(&t, i, k).scale(&q(*c)));
            }
            let nf = w.normal_form(&raw);
            prop_assert_eq!(&w.normal_form(&w.lift(&nf)), &nf);
            for a in 0..t.dim0 {
                let e = t.basis(a).c0;
                prop_assert!(w.normal_form(&hat_partial(&t, &e, -m)).is_zero(), "{} a={} m={}", label, a, m);
            }
        }
        for m in -window..=window {
            for n in -window..=window {
                for i in 0..w.dim(m) {
                    for j in 0..w.dim(n) {
                        prop_assert_eq!(w.bracket(&w.basis(m, i), &w.basis(n, j)).degree, m + n);
                    }
                }
            }
        }
        prop_assert!(w.verify().is_empty(), "{}", label);
    }

    #[test]
    fn algebroids_round_trip_through_tcas(pick in any::<u8>(), c in -2i64..=2) {
        let v = catalogue_algebroid(pick, c);
        prop_assert!(v.check(SignConvention::Standard).unwrap().is_empty());
        let t = v.to_tca().unwrap();
        prop_assert!(t.check().unwrap().is_empty());
        let dec = decompose_leibniz(&t).unwrap();
        prop_assert_eq!(&dec.bracket, &v.bracket);
        prop_assert_eq!(&dec.action, &v.pi);
        prop_assert_eq!(&dec.pairing, &v.pair);
        prop_assert_eq!(&dec.partial, &v.partial);
        let g = catalog::quotient_of(&v);
        prop_assert!(g.check().is_empty());
        if g.anchor.is_zero() {
            let back = g.to_vertex_algebroid().unwrap();
            prop_assert!(back.check(SignConvention::Standard).unwrap().is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn induced_piece_counts_match_coloured_partitions(d in 1usize..=3, form in prop::collection::vec(-2i64..=2, 9), lambda in prop::collection::vec(-2i64..=2, 3)) {
        let mut f = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                f.set(i, j, q(form[i * 3 + j]));
                f.set(j, i, q(form[i * 3 + j]));
            }
        }
        let lie = Arc::new(build_loop_lie(&catalog::abelian(&f), 5).unwrap());
        let ops = character_ops(&lie, &lambda);
        let m = GradedModule::induced(lie, 1, ops, 5).unwrap();
        for n in 0..=5 {
            prop_assert_eq!(m.piece(n).unwrap().dim(), coloured_partitions(d, n as usize));
        }
        prop_assert!(check_representation(&m, 2, 2).unwrap().is_empty());
    }

    #[test]
    fn vacuum_embeds_a_and_b(pick in any::<u8>(), c in -2i64..=2) {
        let v = catalogue_algebroid(pick, c);
        let t = v.to_tca().unwrap();
        let lie = Arc::new(build_loop_lie(&t, 1).unwrap());
        let vl = GradedModule::build_vl(lie, 1, 1);
        let one = vl.vacuum();
        for (deg, range) in [(0, 0..t.dim0), (1, t.dim0..t.total_dim())] {
            let piece = vl.piece(deg).unwrap();
            let rows: Vec<SparseVec> = range.clone().map(|i| piece.coords(&vl.act_mode(i, -1, &one)).unwrap()).collect();
            prop_assert_eq!(Subspace::from_rows(piece.dim(), rows).dim(), range.len());
        }
    }

    #[test]
    fn ideal_slices_grow_with_the_cap(pick in 0u8..3, c in -2i64..=2) {
        let v = catalogue_algebroid(pick, c);
        let n = 2;
        let lie = Arc::new(build_loop_lie(&v.to_tca().unwrap(), n).unwrap());
        let vl = GradedModule::build_vl(lie, n, 6);
        let eg = build_e(&v, &vl).unwrap();
        for d in 0..=n {
            let mut prev = 0;
            for cap in 0..=2 {
                let s = build_ib_slice(&vl, &eg, d, cap, 2).unwrap();
                prop_assert!(s.subspace.dim() >= prev);
                prop_assert!(s.subspace.dim() <= s.piece_dim);
                prev = s.subspace.dim();
            }
        }
        let rows = vb_graded_dims(&vl, &eg, 1, 2, 2).unwrap();
        prop_assert_eq!(rows[0].dim, v.dim_a());
        prop_assert_eq!(rows[1].dim, v.dim_b);
    }

    #[test]
    fn radical_witnesses_reach_the_top(coeffs in prop::collection::vec(-2i64..=2, 1..12), d in 1i64..=3) {
        let v = catalog::line_algebroid();
        let lie = Arc::new(build_loop_lie(&v.to_tca().unwrap(), 3).unwrap());
        let ctx = ModuleContext::new(&v, lie).unwrap();
        let base = ctx.lie_algebroid.base_module();
        let l = build_l(&ctx, &base, 3).unwrap();
        let piece = l.parent.piece(d).unwrap();
        let w: SparseVec = coeffs.iter().enumerate().take(piece.dim()).filter(|(_, x)| **x != 0).map(|(i, x)| (i, q(*x))).collect();
        match radical_witness(&l.parent, &l.relations, d, &w).unwrap() {
            None => prop_assert!(l.relations[&d].contains(&w)),
            Some(path) => {
                prop_assert!(path.len() as i64 <= d);
                let mut x: ModVec = piece.vector(&w);
                for g in &path {
                    x = l.parent.act_vec(*g, &x);
                }
                let top = l.parent.piece(0).unwrap();
                let coords = top.coords(&x).unwrap();
                prop_assert!(!l.relations[&0].contains(&coords));
            }
        }
    }

    #[test]
    fn annihilators_are_submodules(lambda in -3i64..=3) {
        let v = catalog::heisenberg_algebroid();
        let lie = Arc::new(build_loop_lie(&v.to_tca().unwrap(), 2).unwrap());
        let ctx = ModuleContext::new(&v, lie).unwrap();
        let u = catalog::character(&ctx.lie_algebroid, &[q(lambda)]);
        let l = build_l(&ctx, &u, 2).unwrap();
        prop_assert!(annihilator_check(&v, &l.parent, &l.relations, 1).unwrap().is_empty());
    }

    #[test]
    fn text_reports_sort_violations(entries in prop::collection::vec((0usize..3, prop::collection::vec(-3i64..=3, 1..3), -3i64..=3), 0..10)) {
        let names = ["alpha", "beta", "gamma"];
        let mut r = ViolationReport::new();
        for (a, idx, x) in &entries {
            r.push(names[*a], idx.clone(), vec![qf(*x, 2)]);
        }
        let mut rep = Report::new("c", "i", Config { max_degree: 6, weight_cap: 3, margin: 2, trials: 100, seed: 0 });
        rep.push(Section::from_report("s", &r));
        let rows = &rep.sections[0].violations;
        for w in rows.windows(2) {
            prop_assert!((&w[0].axiom, &w[0].indices) <= (&w[1].axiom, &w[1].indices));
        }
        prop_assert_eq!(rep.passed(), entries.is_empty());
        prop_assert_eq!(emit(&rep, Format::Text), emit(&rep.clone(), Format::Text));
        let json = emit(&rep, Format::Machine);
        prop_assert!(!json.contains('.'));
    }
}
