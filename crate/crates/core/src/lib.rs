//! eigenbound: a laboratory for universal adjacency-eigenvalue bounds.
//!
//! The crate verifies, on concrete graphs, the bound
//!
//! ```text
//! lambda_k(G) <= mu_{k-1} / (2(k-1)) * n - 1
//! ```
//!
//! where `mu_r` is the maximal absolute projection constant in rank r: the
//! supremum over N of the largest normalized absolute entry sum of a rank-r
//! orthogonal projection of order N. It builds the extremal graph families,
//! computes spectra with a deterministic Jacobi solver, certifies every
//! inequality in the underlying proof chain entrywise, and computes or
//! estimates the finite-N projection constants that drive the bound.

pub mod bounds;
pub mod cli;
pub mod eigen;
pub mod graph;
pub mod kyfan;
pub mod projconst;
