//! Exact rational linear algebra.
//!
//! Everything downstream (axiom checks, loop algebra normal forms, PBW
//! action matrices, quotient modules) is phrased in terms of the types here:
//! [`Scalar`] for exact rationals, [`SparseVec`] / [`Matrix`] for sparse
//! data and [`Subspace`] for row-reduced spans with deterministic complements.

mod matrix;
mod scalar;
mod subspace;
mod tensor;

pub use matrix::{kernel, rank, rref, Matrix};
pub use scalar::{
    dense_add, dense_is_zero, dense_scale, dense_sub, parse_scalar, q, qf, scalar_pair, Scalar,
    SparseVec,
};
pub use subspace::Subspace;
pub use tensor::Bilinear;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}
