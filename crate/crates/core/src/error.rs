//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error(
        "matrix is not symmetric: asymmetry {asymmetry:.3e} exceeds {limit:.3e} relative to scale"
    )]
    NotSymmetric { asymmetry: f64, limit: f64 },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not positive definite: smallest eigenvalue {lambda_min:.6e}")]
    NotPositiveDefinite { lambda_min: f64 },

    #[error(
        "conditioning threshold violated for exponent {exponent}: \
         lambda_min {lambda_min:.6e} <= 1e-12 * lambda_max {lambda_max:.6e}"
    )]
    IllConditioned {
        lambda_min: f64,
        lambda_max: f64,
        exponent: f64,
    },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("function undefined at eigenvalue {eigenvalue}")]
    FunctionUndefined { eigenvalue: f64 },

    #[error("weight nu = {nu} outside [0, 1]")]
    InvalidWeight { nu: f64 },

    #[error("power-mean exponent t = {t} outside [-1, 1] \\ {{0}}")]
    InvalidPowerExponent { t: f64 },

    #[error("invalid spectral bounds: require 0 < m <= M, got m = {m}, upper = {upper}")]
    InvalidBounds { m: f64, upper: f64 },

    #[error("alpha exponent p = {p} must be positive")]
    InvalidAlphaExponent { p: f64 },

    #[error("matrix is not an isometry: ||T'T - I||_F = {residual:.3e}")]
    NotIsometry { residual: f64 },

    #[error("invalid convex combination: {0}")]
    InvalidConvexCombination(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("missing parameter `{0}` for this inequality")]
    MissingParam(&'static str),

    #[error("wrong input shape for {id}: expected {expected}")]
    InputShape {
        id: &'static str,
        expected: &'static str,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown inequality id `{0}`")]
    UnknownId(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True when the error reports a violated hypothesis rather than a
    /// malformed input. The sampling suite counts these as rejections.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(self, Error::HypothesisViolated(_))
    }
}
