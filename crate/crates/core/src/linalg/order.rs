//! Loewner order checks and norm-based comparisons with an explicit
//! tolerance policy.
//!
//! A comparison A <= B is accepted when lambda_min(B - A) stays above
//! -rel * max(1, ||A||, ||B||). The relative factor defaults to 1e-9 and
//! can be overridden per call site.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::eigen::eigh;
use crate::linalg::matrix::Matrix;
use crate::linalg::sym::SymMatrix;

/// Default relative tolerance for positive semidefinite gap checks.
pub const DEFAULT_TOL_REL: f64 = 1e-9;

/// Relative tolerance used when deciding order and norm comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    rel: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { rel: DEFAULT_TOL_REL }
    }
}

impl TolerancePolicy {
    pub fn new(rel: f64) -> Result<Self> {
        if !rel.is_finite() || rel <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be a positive finite number, got {rel}"
            )));
        }
        Ok(TolerancePolicy { rel })
    }

    pub fn rel(&self) -> f64 {
        self.rel
    }

    /// Absolute tolerance at the scale of the compared quantities:
    /// rel * max(1, scales...).
    pub fn at_scale(&self, scales: &[f64]) -> f64 {
        let scale = scales
            .iter()
            .fold(1.0f64, |acc, s| acc.max(s.abs()));
        self.rel * scale
    }
}

/// Outcome of an order comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderResult {
    /// Whether the comparison holds within tolerance.
    pub holds: bool,
    /// lambda_min(B - A); negative values within tolerance still hold.
    pub gap: f64,
    /// The absolute tolerance that was applied.
    pub tolerance: f64,
}

/// Checks A <= B in the Loewner order.
pub fn loewner_leq(a: &SymMatrix, b: &SymMatrix, policy: &TolerancePolicy) -> Result<OrderResult> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: format!("{0}x{0}", a.n()),
            right: format!("{0}x{0}", b.n()),
        });
    }
    let diff = b.sub(a);
    let gap = eigh(&diff)?.lambda_min();
    let tolerance = policy.at_scale(&[a.operator_norm(), b.operator_norm()]);
    Ok(OrderResult {
        holds: gap >= -tolerance,
        gap,
        tolerance,
    })
}

/// Spectral norm of a general (possibly rectangular) matrix, computed as
/// the square root of the largest eigenvalue of X'X.
pub fn spectral_norm(x: &Matrix) -> f64 {
    let gram = x.transpose().matmul(x);
    let sym = SymMatrix::from_matrix(&gram).expect("Gram matrix is square");
    let top = eigh(&sym)
        .expect("cyclic Jacobi converges for finite symmetric input")
        .lambda_max();
    top.max(0.0).sqrt()
}

/// Tests ||X|| <= t through positive semidefiniteness of the block matrix
/// [[tI, X], [X', tI]]. Agrees with the spectral norm within the default
/// tolerance; X must be square.
pub fn block_norm_check(x: &Matrix, t: f64) -> Result<bool> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    x.check_finite()?;
    if !t.is_finite() {
        return Err(Error::InvalidConfig(format!("threshold t = {t} must be finite")));
    }
    let n = x.rows();
    let mut block = SymMatrix::zeros(2 * n);
    for i in 0..n {
        block.set_sym(i, i, t);
        block.set_sym(n + i, n + i, t);
        for j in 0..n {
            block.set_sym(i, n + j, x.get(i, j));
        }
    }
    let gap = eigh(&block)?.lambda_min();
    let tolerance = TolerancePolicy::default().at_scale(&[t, x.frobenius_norm()]);
    Ok(gap >= -tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_order_holds_with_positive_gap() {
        let a = SymMatrix::diag(&[1.0, 2.0]).unwrap();
        let b = SymMatrix::diag(&[2.0, 4.0]).unwrap();
        let r = loewner_leq(&a, &b, &TolerancePolicy::default()).unwrap();
        assert!(r.holds);
        assert!((r.gap - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reversed_order_fails() {
        let a = SymMatrix::diag(&[2.0, 4.0]).unwrap();
        let b = SymMatrix::diag(&[1.0, 2.0]).unwrap();
        let r = loewner_leq(&a, &b, &TolerancePolicy::default()).unwrap();
        assert!(!r.holds);
        assert!(r.gap < -0.9);
    }

    #[test]
    fn equal_matrices_hold_with_zero_gap() {
        let a = SymMatrix::from_rows(&[vec![2.0, 0.3], vec![0.3, 1.0]]).unwrap();
        let r = loewner_leq(&a, &a, &TolerancePolicy::default()).unwrap();
        assert!(r.holds);
        assert_eq!(r.gap, 0.0);
    }

    #[test]
    fn incomparable_pair_fails_both_directions() {
        let a = SymMatrix::diag(&[2.0, 1.0]).unwrap();
        let b = SymMatrix::diag(&[1.0, 2.0]).unwrap();
        assert!(!loewner_leq(&a, &b, &TolerancePolicy::default()).unwrap().holds);
        assert!(!loewner_leq(&b, &a, &TolerancePolicy::default()).unwrap().holds);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = SymMatrix::identity(2);
        let b = SymMatrix::identity(3);
        assert!(loewner_leq(&a, &b, &TolerancePolicy::default()).is_err());
    }

    #[test]
    fn spectral_norm_of_diagonal_is_max_abs() {
        let x = Matrix::from_rows(&[vec![3.0, 0.0], vec![0.0, -5.0]]).unwrap();
        assert!((spectral_norm(&x) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn block_check_matches_trivial_cases() {
        let zero = Matrix::zeros(2, 2);
        assert!(block_norm_check(&zero, 0.0).unwrap());
        let id = Matrix::identity(2);
        assert!(block_norm_check(&id, 1.0).unwrap());
        assert!(!block_norm_check(&id, 0.5).unwrap());
    }

    #[test]
    fn tolerance_policy_validation() {
        assert!(TolerancePolicy::new(1e-6).is_ok());
        assert!(TolerancePolicy::new(0.0).is_err());
        assert!(TolerancePolicy::new(-1.0).is_err());
        assert!(TolerancePolicy::new(f64::NAN).is_err());
        let p = TolerancePolicy::default();
        assert_eq!(p.at_scale(&[0.5]), DEFAULT_TOL_REL);
        assert_eq!(p.at_scale(&[20.0]), DEFAULT_TOL_REL * 20.0);
    }
}
