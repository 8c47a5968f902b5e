//! Numerical toolkit for operator means of positive definite matrices,
//! positive unital linear maps, and verification of reverse
//! arithmetic-geometric-mean inequalities with their refinements.
//!
//! The crate is organized as a library first; the `examples/` directory
//! demonstrates each capability end to end, and a single thin binary
//! (`opineq`) exposes the same operations as subcommands.
//!
//! Modules:
//! - [`linalg`]: symmetric matrices, Jacobi eigendecomposition, spectral
//!   functional calculus, Loewner order checks with tolerance policy.
//! - [`means`]: weighted arithmetic, geometric, harmonic, and power means,
//!   plus the positive refinement term that sharpens reverse inequalities.
//! - [`posmaps`]: positive unital linear maps (identity, normalized trace,
//!   isometry congruence, block average, convex combinations).
//! - [`inequalities`]: a catalog of inequality verifiers with strict
//!   hypothesis checking and structured reports.
//! - [`sampling`]: seeded random generation of positive definite matrices
//!   with prescribed spectra and the randomized verification suite.
//! - [`worked`]: two built-in worked cases with reference outputs.
//! - [`io`]: JSON formats for matrices, maps, and check inputs.

#![forbid(unsafe_code)]

pub mod error;
pub mod inequalities;
pub mod io;
pub mod linalg;
pub mod means;
pub mod posmaps;
pub mod sampling;
pub mod worked;

pub use error::{Error, Result};
