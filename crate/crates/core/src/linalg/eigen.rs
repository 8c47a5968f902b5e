//! Eigendecomposition of real symmetric matrices by cyclic Jacobi sweeps.
//!
//! Convergence criterion: the off-diagonal Frobenius norm must fall to
//! 1e-14 times the Frobenius norm of the input (which rotations preserve).
//! A hard cap of 100 sweeps guards against pathological input; finite
//! symmetric matrices converge in a handful of sweeps at the dimensions
//! this crate works with.

use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::linalg::sym::SymMatrix;

/// Off-diagonal reduction target relative to the input Frobenius norm.
const OFF_DIAGONAL_TARGET: f64 = 1e-14;

/// Sweep budget before giving up.
const MAX_SWEEPS: usize = 100;

/// Orthogonal Q and eigenvalues sorted descending; A = Q diag(lambda) Q'.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    q: Matrix,
    lambda: Vec<f64>,
}

impl EigenDecomposition {
    /// Sorts eigenpairs descending (stable: ties keep column order) and
    /// stores them. The caller guarantees Q's columns match `lambda`.
    pub fn sorted(q: Matrix, lambda: Vec<f64>) -> Self {
        let n = lambda.len();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| lambda[j].partial_cmp(&lambda[i]).expect("finite eigenvalues"));
        let sorted_lambda: Vec<f64> = idx.iter().map(|&i| lambda[i]).collect();
        let mut sorted_q = Matrix::zeros(n, n);
        for (new_col, &old_col) in idx.iter().enumerate() {
            sorted_q.set_column(new_col, &q.column(old_col));
        }
        EigenDecomposition {
            q: sorted_q,
            lambda: sorted_lambda,
        }
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn lambda_min(&self) -> f64 {
        *self.lambda.last().expect("non-empty spectrum")
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda[0]
    }

    /// Q diag(lambda) Q', symmetrized.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.lambda.len();
        let mut out = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for (k, l) in self.lambda.iter().enumerate() {
                    acc += self.q.get(i, k) * l * self.q.get(j, k);
                }
                out.set_sym(i, j, acc);
            }
        }
        out
    }

    /// ||Q'Q - I||_F.
    pub fn orthogonality_residual(&self) -> f64 {
        let qtq = self.q.transpose().matmul(&self.q);
        qtq.sub(&Matrix::identity(self.lambda.len())).frobenius_norm()
    }
}

fn off_diagonal_norm(w: &Matrix) -> f64 {
    let n = w.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = w.get(i, j);
            acc += 2.0 * v * v;
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
pub fn eigh(a: &SymMatrix) -> Result<EigenDecomposition> {
    let n = a.n();
    if n == 1 {
        return Ok(EigenDecomposition {
            q: Matrix::identity(1),
            lambda: vec![a.get(0, 0)],
        });
    }

    let mut w = a.as_matrix().clone();
    let mut q = Matrix::identity(n);
    let threshold = OFF_DIAGONAL_TARGET * a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&w) <= threshold {
            let lambda: Vec<f64> = (0..n).map(|i| w.get(i, i)).collect();
            return Ok(EigenDecomposition::sorted(q, lambda));
        }
        for p in 0..(n - 1) {
            for r in (p + 1)..n {
                let apr = w.get(p, r);
                if apr == 0.0 {
                    continue;
                }
                let app = w.get(p, p);
                let arr = w.get(r, r);
                let theta = (arr - app) / (2.0 * apr);
                // Smaller root of t^2 + 2 theta t - 1 = 0; the linearized
                // form avoids overflow in theta^2 for huge ratios.
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                w.set(p, p, app - t * apr);
                w.set(r, r, arr + t * apr);
                w.set(p, r, 0.0);
                w.set(r, p, 0.0);
                for k in 0..n {
                    if k == p || k == r {
                        continue;
                    }
                    let wkp = w.get(k, p);
                    let wkr = w.get(k, r);
                    let new_kp = wkp - s * (wkr + tau * wkp);
                    let new_kr = wkr + s * (wkp - tau * wkr);
                    w.set(k, p, new_kp);
                    w.set(p, k, new_kp);
                    w.set(k, r, new_kr);
                    w.set(r, k, new_kr);
                }
                for k in 0..n {
                    let qkp = q.get(k, p);
                    let qkr = q.get(k, r);
                    q.set(k, p, qkp - s * (qkr + tau * qkp));
                    q.set(k, r, qkr + s * (qkp - tau * qkr));
                }
            }
        }
    }

    if off_diagonal_norm(&w) <= threshold {
        let lambda: Vec<f64> = (0..n).map(|i| w.get(i, i)).collect();
        return Ok(EigenDecomposition::sorted(q, lambda));
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}
