//! Seeded random valid Tcas and single-entry perturbations, used to compare
//! the axiom checkers with the loop-level conditions.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::linalg::{q, qf, rank, Matrix, Scalar};
use crate::looplie::{check_loop_conditions, condition_family, membership_conditions, REDUNDANT_JACOBI};
use crate::tca::{Tca, TcaError};

pub const DEFAULT_TRIALS: usize = 100;
pub const MAX_DIM: usize = 3;

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    q(rng.gen_range(-2..=2))
}

fn nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    [q(1), q(-1), q(2), qf(1, 2), qf(-3, 2)].choose(rng).expect("nonempty").clone()
}

fn invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let x = if r == c { q(rng.gen_range(1..=2)) } else { q(rng.gen_range(-1..=1)) };
                m.set(r, c, x);
            }
        }
        if rank(&m) == n {
            return m;
        }
    }
}

fn sym_form(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut f = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = small(rng);
            f.set(i, j, x.clone());
            f.set(j, i, x);
        }
    }
    f
}

/// Catalogue Tca of dimensions at most `MAX_DIM + MAX_DIM`, before any basis change.
fn base_tca(rng: &mut ChaCha8Rng, depth: usize) -> (String, Tca) {
    let kind = rng.gen_range(0..if depth == 0 { 8 } else { 7 });
    match kind {
        0 => {
            let c = small(rng);
            (format!("heisenberg({c})"), catalog::heisenberg(c))
        }
        1 => {
            let c = small(rng);
            (format!("sl2({c})"), catalog::sl2(c))
        }
        2 => {
            let n = rng.gen_range(1..=MAX_DIM);
            (format!("abelian({n})"), catalog::abelian(&sym_form(rng, n)))
        }
        3 => {
            let c = small(rng);
            (format!("solvable2({c})"), catalog::solvable2(c))
        }
        4 => {
            let (a, b, c) = (small(rng), small(rng), small(rng));
            (format!("heisenberg_lie({a},{b},{c})"), catalog::heisenberg_lie(a, b, c))
        }
        5 => ("line".into(), catalog::line_algebroid().to_tca().expect("valid")),
        6 => {
            let (d0, d1) = (rng.gen_range(0..=MAX_DIM), rng.gen_range(0..=MAX_DIM));
            (format!("zero({d0},{d1})"), Tca::zero(d0, d1))
        }
        _ => loop {
            let (l1, t1) = base_tca(rng, depth + 1);
            let (l2, t2) = base_tca(rng, depth + 1);
            if t1.dim0 + t2.dim0 <= MAX_DIM && t1.dim1 + t2.dim1 <= MAX_DIM {
                break (format!("{l1}+{l2}"), t1.direct_sum(&t2));
            }
        },
    }
}

/// A valid Tca: a catalogue entry (or a direct sum of two) after a random
/// change of basis and a random rescaling of the pairing.
pub fn random_valid_tca(rng: &mut ChaCha8Rng) -> (String, Tca) {
    let (label, t) = base_tca(rng, 0);
    let (p0, p1) = (invertible(rng, t.dim0), invertible(rng, t.dim1));
    let t = t.change_basis(&p0, &p1).expect("invertible");
    let lambda = nonzero(rng);
    let label = format!("{label} rescaled by {lambda}");
    (label, t.rescale_pairing(&lambda))
}

/// Which tensor a perturbation touched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Partial,
    T0Ab,
    T0Ba,
    T0Bb,
    T1Bb,
}

/// Adds a nonzero scalar to one random entry; `None` when every tensor is empty.
pub fn perturb(rng: &mut ChaCha8Rng, t: &Tca) -> Option<(Slot, Vec<usize>, Tca)> {
    let (d0, d1) = (t.dim0, t.dim1);
    let mut slots = Vec::new();
    if d0 > 0 && d1 > 0 {
        slots.extend([Slot::Partial, Slot::T0Ab, Slot::T0Ba, Slot::T1Bb]);
    }
    if d1 > 0 {
        slots.push(Slot::T0Bb);
    }
    let slot = *slots.choose(rng)?;
    let mut out = t.clone();
    let delta = nonzero(rng);
    let mut pick = |n: usize| rng.gen_range(0..n);
    let idx = match slot {
        Slot::Partial => {
            let (r, c) = (pick(d1), pick(d0));
            out.partial.set(r, c, t.partial.get(r, c) + &delta);
            vec![r, c]
        }
        Slot::T0Ab | Slot::T0Ba | Slot::T0Bb | Slot::T1Bb => {
            let tensor = match slot {
                Slot::T0Ab => &mut out.t0_ab,
                Slot::T0Ba => &mut out.t0_ba,
                Slot::T0Bb => &mut out.t0_bb,
                _ => &mut out.t1_bb,
            };
            let (a, b, c) = tensor.dims();
            let (i, j, k) = (pick(a), pick(b), pick(c));
            tensor.add_to(i, j, k, &delta);
            vec![i, j, k]
        }
    };
    Some((slot, idx, out))
}

/// Agreement between the axiom checkers, the loop-level relations and the
/// bracket-membership tests on one Tca.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub tca_valid: bool,
    pub reduced_valid: bool,
    pub formula_valid: bool,
    pub membership_valid: bool,
    pub formula_families: BTreeSet<&'static str>,
    pub membership_families: BTreeSet<&'static str>,
    /// The redundant Jacobi relation fails although all the others hold.
    pub redundancy_broken: bool,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.tca_valid == self.reduced_valid
            && self.tca_valid == self.formula_valid
            && self.tca_valid == self.membership_valid
            && self.formula_families == self.membership_families
            && !self.redundancy_broken
    }
}

pub fn compare(t: &Tca) -> Result<Comparison, TcaError> {
    let full = t.check()?;
    let reduced = t.check_reduced()?;
    let formula = check_loop_conditions(t)?;
    let membership = membership_conditions(t)?;
    let others_hold = formula.iter().all(|v| v.axiom == REDUNDANT_JACOBI);
    Ok(Comparison {
        tca_valid: full.is_empty(),
        reduced_valid: reduced.is_empty(),
        formula_valid: formula.is_empty(),
        membership_valid: membership.is_empty(),
        formula_families: formula.axioms().into_iter().filter_map(condition_family).collect(),
        membership_families: membership.axioms(),
        redundancy_broken: others_hold && formula.has(REDUNDANT_JACOBI),
    })
}

/// Totals over a fuzz run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzOutcome {
    pub seed: u64,
    pub valid_trials: usize,
    pub valid_agree: usize,
    pub perturbations: usize,
    /// Perturbations that broke at least one axiom.
    pub violated: usize,
    pub perturbation_agree: usize,
    /// Labels of every trial where the routes disagree.
    pub mismatches: Vec<String>,
}

impl FuzzOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn run_fuzz(trials: usize, seed: u64) -> Result<FuzzOutcome, TcaError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = FuzzOutcome { seed, ..FuzzOutcome::default() };
    let mut k = 0;
    while out.perturbations < trials || out.valid_trials < trials {
        k += 1;
        let (label, t) = random_valid_tca(&mut rng);
        if out.valid_trials < trials {
            out.valid_trials += 1;
            let c = compare(&t)?;
            if c.agrees() && c.tca_valid {
                out.valid_agree += 1;
            } else {
                out.mismatches.push(format!("trial {k}: {label}: {c:?}"));
            }
        }
        if out.perturbations < trials {
            let Some((slot, idx, p)) = perturb(&mut rng, &t) else { continue };
            out.perturbations += 1;
            let c = compare(&p)?;
            if !c.tca_valid {
                out.violated += 1;
            }
            if c.agrees() {
                out.perturbation_agree += 1;
            } else {
                out.mismatches.push(format!("trial {k}: {label} perturbed at {slot:?}{idx:?}: {c:?}"));
            }
        }
    }
    Ok(out)
}

/// Number of nonzero entries, a crude size measure for reports.
pub fn support(t: &Tca) -> usize {
    t.partial.nnz()
        + [&t.t0_ab, &t.t0_ba, &t.t0_bb, &t.t1_bb].iter().map(|b| b.entries().filter(|(_, x)| !x.is_zero()).count()).sum::<usize>()
}
