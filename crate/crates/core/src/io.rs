//! JSON wire formats: matrices, map descriptions, and check-input files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpdMatrix, SymMatrix};
use crate::posmaps::PositiveUnitalMap;

/// Asymmetry budget for matrices arriving over the wire, relative to
/// the Frobenius norm. Within budget the matrix is symmetrized; beyond
/// it the read is rejected.
pub const SYMMETRY_TOL_REL: f64 = 1e-8;

/// A dense symmetric matrix on the wire: row-major `data`, `n` rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub n: usize,
    pub data: Vec<Vec<f64>>,
}

impl MatrixDoc {
    pub fn from_sym(x: &SymMatrix) -> Self {
        MatrixDoc {
            n: x.n(),
            data: x.to_rows(),
        }
    }

    /// Validates shape and symmetry, then symmetrizes residual roundoff.
    pub fn into_sym(self) -> Result<SymMatrix> {
        if self.n == 0 || self.data.len() != self.n {
            return Err(Error::InvalidConfig(format!(
                "matrix declares n = {} but has {} rows",
                self.n,
                self.data.len()
            )));
        }
        let raw = Matrix::from_rows(&self.data)?;
        if !raw.is_square() {
            return Err(Error::NotSquare {
                rows: raw.rows(),
                cols: raw.cols(),
            });
        }
        raw.check_finite()?;
        let asymmetry = raw.asymmetry();
        let limit = SYMMETRY_TOL_REL * raw.frobenius_norm().max(f64::MIN_POSITIVE);
        if asymmetry > limit {
            return Err(Error::NotSymmetric { asymmetry, limit });
        }
        SymMatrix::from_matrix(&raw)
    }

    pub fn into_spd(self) -> Result<SpdMatrix> {
        SpdMatrix::new(self.into_sym()?)
    }
}

pub fn read_spd(path: &Path) -> Result<SpdMatrix> {
    let doc: MatrixDoc = serde_json::from_str(&fs::read_to_string(path)?)?;
    doc.into_spd()
}

pub fn write_sym(path: &Path, x: &SymMatrix) -> Result<()> {
    let doc = MatrixDoc::from_sym(x);
    fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

/// A positive unital map on the wire, tagged by `variant`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum MapSpec {
    Identity { dim: usize },
    NormalizedTrace { dim: usize },
    IsometryCongruence { t: Vec<Vec<f64>> },
    BlockAverage { blocks: usize, block_dim: usize },
    ConvexCombination { parts: Vec<WeightedMapSpec> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedMapSpec {
    pub weight: f64,
    pub map: MapSpec,
}

impl MapSpec {
    /// Builds the runtime map; isometry and weight validation happen in
    /// the constructors.
    pub fn into_map(self) -> Result<PositiveUnitalMap> {
        match self {
            MapSpec::Identity { dim } => PositiveUnitalMap::identity(dim),
            MapSpec::NormalizedTrace { dim } => PositiveUnitalMap::normalized_trace(dim),
            MapSpec::IsometryCongruence { t } => {
                PositiveUnitalMap::isometry_congruence(Matrix::from_rows(&t)?)
            }
            MapSpec::BlockAverage { blocks, block_dim } => {
                PositiveUnitalMap::block_average(blocks, block_dim)
            }
            MapSpec::ConvexCombination { parts } => {
                let mut built = Vec::with_capacity(parts.len());
                for part in parts {
                    built.push((part.weight, part.map.into_map()?));
                }
                PositiveUnitalMap::convex_combination(built)
            }
        }
    }
}

/// Everything a single check may consume, in one file. Every field is
/// optional; the selected inequality dictates which ones it reads.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct CheckFile {
    pub a: Option<MatrixDoc>,
    pub b: Option<MatrixDoc>,
    pub x: Option<Vec<f64>>,
    pub a_list: Option<Vec<MatrixDoc>>,
    pub b_list: Option<Vec<MatrixDoc>>,
    pub map: Option<MapSpec>,
}

pub fn read_check_file(path: &Path) -> Result<CheckFile> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}
