//! Dense symmetric linear algebra: matrix types, a cyclic Jacobi
//! eigensolver, spectral functional calculus, and Loewner order checks.

mod eigen;
mod matrix;
mod order;
mod sym;

pub use eigen::{eigh, EigenDecomposition};
pub use matrix::Matrix;
pub use order::{block_norm_check, loewner_leq, spectral_norm, OrderResult, TolerancePolicy, DEFAULT_TOL_REL};
pub use sym::{congruence, psd_power, SpdMatrix, SpectralBounds, SymMatrix, CONDITIONING_FLOOR};
