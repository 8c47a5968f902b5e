//! Symmetric and symmetric positive definite matrices.
//!
//! `SymMatrix` keeps its two triangles exactly equal; every constructor
//! symmetrizes, so downstream code never has to re-check. `SpdMatrix`
//! additionally validates positive definiteness at construction and caches
//! the eigendecomposition computed for that check, which makes repeated
//! functional-calculus calls on the same matrix cheap.

use crate::error::{Error, Result};
use crate::linalg::eigen::{eigh, EigenDecomposition};
use crate::linalg::matrix::Matrix;

/// Relative eigenvalue floor below which fractional and negative matrix
/// powers are refused: lambda_min must exceed 1e-12 * lambda_max.
pub const CONDITIONING_FLOOR: f64 = 1e-12;

/// Real symmetric matrix. Both triangles are bitwise equal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    mat: Matrix,
}

impl SymMatrix {
    /// Symmetrizes a square matrix as (X + X')/2. Rejects non-square and
    /// non-finite input; deliberately does not reject asymmetry (readers
    /// that must are expected to check `Matrix::asymmetry` first).
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        m.check_finite()?;
        let n = m.rows();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            out.set(i, i, m.get(i, i));
            for j in (i + 1)..n {
                let v = 0.5 * (m.get(i, j) + m.get(j, i));
                out.set(i, j, v);
                out.set(j, i, v);
            }
        }
        Ok(SymMatrix { mat: out })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        SymMatrix::from_matrix(&Matrix::from_rows(rows)?)
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidConfig("diagonal must be non-empty".into()));
        }
        for v in values {
            if !v.is_finite() {
                return Err(Error::NonFinite { row: 0, col: 0 });
            }
        }
        let n = values.len();
        let mut m = Matrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, *v);
        }
        Ok(SymMatrix { mat: m })
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix {
            mat: Matrix::identity(n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            mat: Matrix::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mat.get(i, j)
    }

    /// Sets entries (i, j) and (j, i) to the same value.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.mat.set(i, j, v);
        self.mat.set(j, i, v);
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn add(&self, rhs: &SymMatrix) -> SymMatrix {
        SymMatrix {
            mat: self.mat.add(&rhs.mat),
        }
    }

    pub fn sub(&self, rhs: &SymMatrix) -> SymMatrix {
        SymMatrix {
            mat: self.mat.sub(&rhs.mat),
        }
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix {
            mat: self.mat.scale(s),
        }
    }

    /// Returns self + c * I.
    pub fn add_scaled_identity(&self, c: f64) -> SymMatrix {
        let mut out = self.clone();
        for i in 0..out.n() {
            let v = out.get(i, i) + c;
            out.mat.set(i, i, v);
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    /// Largest absolute eigenvalue (the spectral norm of a symmetric matrix).
    pub fn operator_norm(&self) -> f64 {
        let eig = eigh(self).expect("cyclic Jacobi converges for finite symmetric input");
        eig.lambda()
            .iter()
            .fold(0.0f64, |acc, l| acc.max(l.abs()))
    }

    /// x' A x.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n());
        let ax = self.mat.matvec(x);
        ax.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.mat.to_rows()
    }
}

/// Closed bracket [m, M] for the spectrum of a positive definite matrix,
/// with 0 < m <= M.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralBounds {
    lower: f64,
    upper: f64,
}

impl SpectralBounds {
    pub fn new(m: f64, upper: f64) -> Result<Self> {
        if !(m.is_finite() && upper.is_finite()) || m <= 0.0 || upper < m {
            return Err(Error::InvalidBounds { m, upper });
        }
        Ok(SpectralBounds { lower: m, upper })
    }

    /// Lower endpoint m.
    pub fn m(&self) -> f64 {
        self.lower
    }

    /// Upper endpoint M.
    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// (M + m)^2 / (4 M m), the Kantorovich-type ratio of the bracket.
    pub fn kantorovich_ratio(&self) -> f64 {
        let (m, um) = (self.lower, self.upper);
        (um + m) * (um + m) / (4.0 * um * m)
    }
}

/// Symmetric positive definite matrix with its eigendecomposition cached.
#[derive(Debug, Clone)]
pub struct SpdMatrix {
    sym: SymMatrix,
    eig: EigenDecomposition,
}

impl SpdMatrix {
    /// Validates positive definiteness by eigendecomposition.
    pub fn new(sym: SymMatrix) -> Result<Self> {
        let eig = eigh(&sym)?;
        let lambda_min = eig.lambda_min();
        if lambda_min <= 0.0 {
            return Err(Error::NotPositiveDefinite { lambda_min });
        }
        Ok(SpdMatrix { sym, eig })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        SpdMatrix::new(SymMatrix::from_rows(rows)?)
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        SpdMatrix::new(SymMatrix::diag(values)?)
    }

    pub fn identity(n: usize) -> Self {
        SpdMatrix::new(SymMatrix::identity(n)).expect("identity is positive definite")
    }

    /// Builds Q diag(lambda) Q' from known eigenpairs, sorting descending.
    /// Intended for callers that already hold an orthogonal Q (functional
    /// calculus, prescribed-spectrum sampling); skips the re-decomposition.
    pub fn from_eigenpairs(q: &Matrix, lambda: &[f64]) -> Result<Self> {
        if !q.is_square() || q.rows() != lambda.len() {
            return Err(Error::DimensionMismatch {
                left: format!("{}x{}", q.rows(), q.cols()),
                right: format!("{} eigenvalues", lambda.len()),
            });
        }
        for l in lambda {
            if !(l.is_finite() && *l > 0.0) {
                return Err(Error::NotPositiveDefinite { lambda_min: *l });
            }
        }
        let eig = EigenDecomposition::sorted(q.clone(), lambda.to_vec());
        let sym = eig.reconstruct();
        Ok(SpdMatrix { sym, eig })
    }

    pub fn n(&self) -> usize {
        self.sym.n()
    }

    pub fn sym(&self) -> &SymMatrix {
        &self.sym
    }

    pub fn as_matrix(&self) -> &Matrix {
        self.sym.as_matrix()
    }

    pub fn eig(&self) -> &EigenDecomposition {
        &self.eig
    }

    pub fn lambda_min(&self) -> f64 {
        self.eig.lambda_min()
    }

    pub fn lambda_max(&self) -> f64 {
        self.eig.lambda_max()
    }

    pub fn operator_norm(&self) -> f64 {
        self.lambda_max()
    }

    /// Applies f to the spectrum: Q diag(f(lambda)) Q'. Errors when f is
    /// not finite at some eigenvalue.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> Result<SymMatrix> {
        let mapped: Vec<f64> = self.eig.lambda().iter().map(|l| f(*l)).collect();
        for (l, fl) in self.eig.lambda().iter().zip(mapped.iter()) {
            if !fl.is_finite() {
                return Err(Error::FunctionUndefined { eigenvalue: *l });
            }
        }
        Ok(EigenDecomposition::sorted(self.eig.q().clone(), mapped).reconstruct())
    }

    /// Matrix power via the spectral calculus. p = 0 and p = 1 are exact;
    /// fractional or negative p require lambda_min > 1e-12 * lambda_max.
    pub fn power(&self, p: f64) -> Result<SpdMatrix> {
        if p == 0.0 {
            return Ok(SpdMatrix::identity(self.n()));
        }
        if p == 1.0 {
            return Ok(self.clone());
        }
        let fractional = p.fract() != 0.0;
        if p < 0.0 || fractional {
            let (lo, hi) = (self.lambda_min(), self.lambda_max());
            if lo <= CONDITIONING_FLOOR * hi {
                return Err(Error::IllConditioned {
                    lambda_min: lo,
                    lambda_max: hi,
                    exponent: p,
                });
            }
        }
        let powered: Vec<f64> = self.eig.lambda().iter().map(|l| l.powf(p)).collect();
        SpdMatrix::from_eigenpairs(self.eig.q(), &powered)
    }

    pub fn sqrt(&self) -> Result<SpdMatrix> {
        self.power(0.5)
    }

    pub fn inverse(&self) -> Result<SpdMatrix> {
        self.power(-1.0)
    }

    pub fn add(&self, rhs: &SpdMatrix) -> Result<SpdMatrix> {
        SpdMatrix::new(self.sym.add(&rhs.sym))
    }

    pub fn scale(&self, s: f64) -> Result<SpdMatrix> {
        if s <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "scaling a positive definite matrix by {s} would not keep it positive"
            )));
        }
        SpdMatrix::from_eigenpairs(
            self.eig.q(),
            &self
                .eig
                .lambda()
                .iter()
                .map(|l| l * s)
                .collect::<Vec<_>>(),
        )
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.sym.to_rows()
    }
}

/// T' X T for an n x k matrix T, symmetrized. The workhorse behind
/// congruence-form maps and the two-sided products in mean formulas.
pub fn congruence(t: &Matrix, x: &SymMatrix) -> Result<SymMatrix> {
    if t.rows() != x.n() {
        return Err(Error::DimensionMismatch {
            left: format!("{}x{}", t.rows(), t.cols()),
            right: format!("{0}x{0}", x.n()),
        });
    }
    let prod = t.transpose().matmul(x.as_matrix()).matmul(t);
    SymMatrix::from_matrix(&prod)
}

/// Power of a positive SEMIdefinite symmetric matrix for exponents p >= 1,
/// where t^p is continuous at zero. Eigenvalues in a small negative
/// rounding band are clamped to zero; genuinely negative spectra are
/// rejected.
pub fn psd_power(a: &SymMatrix, p: f64) -> Result<SymMatrix> {
    if p < 1.0 {
        return Err(Error::InvalidConfig(format!(
            "psd_power requires p >= 1, got {p}"
        )));
    }
    let eig = eigh(a)?;
    let scale = eig.lambda_max().abs().max(1.0);
    let band = 1e-9 * scale;
    let mut clamped = Vec::with_capacity(a.n());
    for l in eig.lambda() {
        if *l < -band {
            return Err(Error::NotPositiveDefinite { lambda_min: *l });
        }
        clamped.push(l.max(0.0).powf(p));
    }
    Ok(EigenDecomposition::sorted(eig.q().clone(), clamped).reconstruct())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_makes_triangles_bitwise_equal() {
        let m = Matrix::from_rows(&[vec![1.0, 0.3000000001], vec![0.3, 2.0]]).unwrap();
        let s = SymMatrix::from_matrix(&m).unwrap();
        assert_eq!(s.get(0, 1), s.get(1, 0));
        assert!((s.get(0, 1) - 0.30000000005).abs() < 1e-15);
    }

    #[test]
    fn indefinite_matrix_is_rejected() {
        let err = SpdMatrix::diag(&[1.0, -1.0]).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { .. }));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let err = SpdMatrix::diag(&[1.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { .. }));
    }

    #[test]
    fn power_half_of_diagonal() {
        let a = SpdMatrix::diag(&[4.0, 9.0]).unwrap();
        let r = a.power(0.5).unwrap();
        assert!((r.sym().get(0, 0) - 2.0).abs() < 1e-14);
        assert!((r.sym().get(1, 1) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn power_zero_and_one_are_exact() {
        let a = SpdMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 3.0]]).unwrap();
        let p0 = a.power(0.0).unwrap();
        assert_eq!(p0.sym(), &SymMatrix::identity(2));
        let p1 = a.power(1.0).unwrap();
        assert_eq!(p1.sym(), a.sym());
    }

    #[test]
    fn fractional_power_of_ill_conditioned_matrix_errors() {
        let a = SpdMatrix::diag(&[1.0, 1e-15]).unwrap();
        let err = a.power(0.5).unwrap_err();
        assert!(matches!(err, Error::IllConditioned { .. }));
        let err = a.power(-1.0).unwrap_err();
        assert!(matches!(err, Error::IllConditioned { .. }));
        // Integer non-negative powers stay available.
        assert!(a.power(2.0).is_ok());
    }

    #[test]
    fn power_roundtrip_within_tolerance() {
        let a = SpdMatrix::from_rows(&[vec![3.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let back = a.power(1.0 / 3.0).unwrap().power(3.0).unwrap();
        let diff = back.sym().sub(a.sym()).frobenius_norm();
        assert!(diff <= 1e-10 * a.sym().frobenius_norm());
    }

    #[test]
    fn inverse_times_self_is_identity() {
        let a = SpdMatrix::from_rows(&[vec![2.0, 0.7], vec![0.7, 1.5]]).unwrap();
        let prod = a.as_matrix().matmul(a.inverse().unwrap().as_matrix());
        let resid = prod.sub(&Matrix::identity(2)).frobenius_norm();
        assert!(resid < 1e-13);
    }

    #[test]
    fn apply_function_reciprocal_matches_inverse() {
        let a = SpdMatrix::diag(&[2.0, 4.0]).unwrap();
        let r = a.apply_function(|t| 1.0 / t).unwrap();
        assert!((r.get(0, 0) - 0.5).abs() < 1e-15);
        assert!((r.get(1, 1) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn apply_function_rejects_non_finite_values() {
        let a = SpdMatrix::diag(&[1.0, 2.0]).unwrap();
        let err = a.apply_function(|t| (t - 2.0).ln()).unwrap_err();
        assert!(matches!(err, Error::FunctionUndefined { .. }));
    }

    #[test]
    fn psd_power_accepts_singular_input() {
        let d = SymMatrix::diag(&[2.0, 0.0]).unwrap();
        let r = psd_power(&d, 2.0).unwrap();
        assert!((r.get(0, 0) - 4.0).abs() < 1e-14);
        assert!(r.get(1, 1).abs() < 1e-14);
        assert!(psd_power(&SymMatrix::diag(&[1.0, -1.0]).unwrap(), 2.0).is_err());
        assert!(psd_power(&d, 0.5).is_err());
    }

    #[test]
    fn spectral_bounds_validation() {
        assert!(SpectralBounds::new(1.0, 3.0).is_ok());
        assert!(SpectralBounds::new(1.0, 1.0).is_ok());
        assert!(SpectralBounds::new(0.0, 1.0).is_err());
        assert!(SpectralBounds::new(-1.0, 1.0).is_err());
        assert!(SpectralBounds::new(3.0, 1.0).is_err());
        let b = SpectralBounds::new(1.0, 3.0).unwrap();
        assert!((b.kantorovich_ratio() - 16.0 / 12.0).abs() < 1e-15);
    }
}
