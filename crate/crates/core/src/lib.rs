//! Exact structure-constant engine for vertex algebroids.
//!
//! The pipeline runs from 1-truncated conformal algebras and vertex
//! algebroids ([`tca`], [`algebroid`]) through the graded loop Lie algebra
//! ([`looplie`]) and its PBW modules ([`pbw`]) to the vertex algebra `V_B`
//! ([`vb`]) and its graded modules `M(U)`, `M_B(U)`, `L(U)` ([`modules`]).
//! All arithmetic is over exact rationals.

pub mod algebroid;
pub mod catalog;
pub mod cli;
pub mod fuzz;
pub mod irreducible;
pub mod linalg;
pub mod looplie;
pub mod modules;
pub mod pbw;
pub mod report;
pub mod tca;
pub mod vb;
