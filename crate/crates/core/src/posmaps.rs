//! Positive unital linear maps on symmetric matrices.
//!
//! Supported shapes: identity, normalized trace, congruence X -> T'XT
//! (unital exactly when T is an isometry), block average of diagonal
//! blocks, and convex combinations of maps with matching dimensions.
//!
//! `congruence` deliberately skips the isometry check so that callers can
//! build maps that are positive but not unital and watch `verify_unital`
//! reject them; `isometry_congruence` is the validating constructor.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{congruence as congruence_product, Matrix, SymMatrix};

/// Absolute Frobenius tolerance for the unitality test Phi(I) = I.
pub const UNITAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub enum PositiveUnitalMap {
    Identity { dim: usize },
    NormalizedTrace { dim: usize },
    Congruence { t: Matrix },
    BlockAverage { blocks: usize, block_dim: usize },
    Convex { parts: Vec<(f64, PositiveUnitalMap)> },
}

impl PositiveUnitalMap {
    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(PositiveUnitalMap::Identity { dim })
    }

    /// X -> tr(X)/n as a 1x1 matrix.
    pub fn normalized_trace(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(PositiveUnitalMap::NormalizedTrace { dim })
    }

    /// X -> T'XT with T validated to satisfy T'T = I.
    pub fn isometry_congruence(t: Matrix) -> Result<Self> {
        t.check_finite()?;
        if t.rows() < t.cols() || t.cols() == 0 {
            return Err(Error::InvalidConfig(format!(
                "isometry must be n x k with n >= k >= 1, got {}x{}",
                t.rows(),
                t.cols()
            )));
        }
        let gram = t.transpose().matmul(&t);
        let residual = gram.sub(&Matrix::identity(t.cols())).frobenius_norm();
        if residual > 1e-12 {
            return Err(Error::NotIsometry { residual });
        }
        Ok(PositiveUnitalMap::Congruence { t })
    }

    /// X -> T'XT without the isometry check. Always positive; unital only
    /// when T happens to be an isometry.
    pub fn congruence(t: Matrix) -> Result<Self> {
        t.check_finite()?;
        if t.cols() == 0 || t.rows() == 0 {
            return Err(Error::InvalidConfig("congruence matrix must be non-empty".into()));
        }
        Ok(PositiveUnitalMap::Congruence { t })
    }

    /// X -> average of the `blocks` diagonal blocks of size `block_dim`.
    pub fn block_average(blocks: usize, block_dim: usize) -> Result<Self> {
        check_dim(blocks)?;
        check_dim(block_dim)?;
        Ok(PositiveUnitalMap::BlockAverage { blocks, block_dim })
    }

    /// Weighted sum of maps; weights must be nonnegative and sum to one
    /// within 1e-12, and all parts must agree on input and output size.
    pub fn convex_combination(parts: Vec<(f64, PositiveUnitalMap)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidConvexCombination("no parts".into()));
        }
        let mut total = 0.0;
        for (w, _) in &parts {
            if !w.is_finite() || *w < 0.0 {
                return Err(Error::InvalidConvexCombination(format!(
                    "weight {w} is not a nonnegative number"
                )));
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConvexCombination(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        let (in_dim, out_dim) = (parts[0].1.input_dim(), parts[0].1.output_dim());
        for (_, m) in &parts {
            if m.input_dim() != in_dim || m.output_dim() != out_dim {
                return Err(Error::InvalidConvexCombination(
                    "parts disagree on input or output dimension".into(),
                ));
            }
        }
        Ok(PositiveUnitalMap::Convex { parts })
    }

    pub fn input_dim(&self) -> usize {
        match self {
            PositiveUnitalMap::Identity { dim } => *dim,
            PositiveUnitalMap::NormalizedTrace { dim } => *dim,
            PositiveUnitalMap::Congruence { t } => t.rows(),
            PositiveUnitalMap::BlockAverage { blocks, block_dim } => blocks * block_dim,
            PositiveUnitalMap::Convex { parts } => parts[0].1.input_dim(),
        }
    }

    pub fn output_dim(&self) -> usize {
        match self {
            PositiveUnitalMap::Identity { dim } => *dim,
            PositiveUnitalMap::NormalizedTrace { .. } => 1,
            PositiveUnitalMap::Congruence { t } => t.cols(),
            PositiveUnitalMap::BlockAverage { block_dim, .. } => *block_dim,
            PositiveUnitalMap::Convex { parts } => parts[0].1.output_dim(),
        }
    }

    pub fn apply(&self, x: &SymMatrix) -> Result<SymMatrix> {
        if x.n() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                left: format!("map input {0}x{0}", self.input_dim()),
                right: format!("{0}x{0}", x.n()),
            });
        }
        match self {
            PositiveUnitalMap::Identity { .. } => Ok(x.clone()),
            PositiveUnitalMap::NormalizedTrace { dim } => {
                SymMatrix::diag(&[x.trace() / *dim as f64])
            }
            PositiveUnitalMap::Congruence { t } => congruence_product(t, x),
            PositiveUnitalMap::BlockAverage { blocks, block_dim } => {
                let d = *block_dim;
                let mut out = SymMatrix::zeros(d);
                for b in 0..*blocks {
                    for i in 0..d {
                        for j in i..d {
                            let v = out.get(i, j) + x.get(b * d + i, b * d + j);
                            out.set_sym(i, j, v);
                        }
                    }
                }
                Ok(out.scale(1.0 / *blocks as f64))
            }
            PositiveUnitalMap::Convex { parts } => {
                let mut acc = SymMatrix::zeros(self.output_dim());
                for (w, m) in parts {
                    acc = acc.add(&m.apply(x)?.scale(*w));
                }
                Ok(acc)
            }
        }
    }

    /// ||Phi(I) - I||_F <= 1e-12 (absolute).
    pub fn verify_unital(&self) -> bool {
        let image = self
            .apply(&SymMatrix::identity(self.input_dim()))
            .expect("identity has the map's input dimension");
        let residual = image
            .sub(&SymMatrix::identity(self.output_dim()))
            .frobenius_norm();
        residual <= UNITAL_TOL
    }

    /// Applies the map to seeded random PSD inputs (singular ones included)
    /// and checks each image for positive semidefiniteness within the
    /// default tolerance. `trials` must be at least 1.
    pub fn verify_positive_sampled(&self, trials: u32, seed: u64) -> bool {
        assert!(trials >= 1, "at least one trial required");
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..trials {
            let x = crate::sampling::sample_psd(self.input_dim(), trial % 2 == 0, &mut rng);
            let image = self.apply(&x).expect("sampled input has the right dimension");
            let scale = x.operator_norm().max(1.0);
            let gap = crate::linalg::eigh(&image)
                .expect("finite symmetric image")
                .lambda_min();
            if gap < -1e-9 * scale {
                return false;
            }
        }
        true
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    Ok(())
}

impl fmt::Display for PositiveUnitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositiveUnitalMap::Identity { dim } => write!(f, "identity({dim})"),
            PositiveUnitalMap::NormalizedTrace { dim } => write!(f, "normalized_trace({dim})"),
            PositiveUnitalMap::Congruence { t } => {
                write!(f, "congruence({}x{})", t.rows(), t.cols())
            }
            PositiveUnitalMap::BlockAverage { blocks, block_dim } => {
                write!(f, "block_average({blocks}x{block_dim})")
            }
            PositiveUnitalMap::Convex { parts } => {
                write!(f, "convex(")?;
                for (i, (w, m)) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{w}*{m}")?;
                }
                write!(f, ")")
            }
        }
    }
}
