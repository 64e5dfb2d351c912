use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Sparse vector keyed by coordinate index. Zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn q(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `n` or `n/d` (optional sign on the numerator).
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// `(numerator, denominator)` as decimal integer strings.
pub fn scalar_pair(x: &Scalar) -> (String, String) {
    (x.numer().to_string(), x.denom().to_string())
}

pub fn dense_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dense_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn dense_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dense_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    if c.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| c * x).collect()
}

pub(crate) fn sparse_axpy(target: &mut SparseVec, c: &Scalar, x: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, v) in x {
        let entry = target.entry(*k).or_insert_with(Scalar::zero);
        *entry += c * v;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

pub(crate) fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub(crate) fn dense_from_sparse(v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}
