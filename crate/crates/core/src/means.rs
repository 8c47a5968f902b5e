//! Weighted operator means of positive definite matrices.
//!
//! For a weight nu in [0, 1] the crate provides
//!
//! - arithmetic:  (1 - nu) A + nu B
//! - geometric:   A^{1/2} (A^{-1/2} B A^{-1/2})^nu A^{1/2}
//! - harmonic:    ((1 - nu) A^{-1} + nu B^{-1})^{-1}
//! - power(t):    A^{1/2} ((1 - nu) I + nu (A^{-1/2} B A^{-1/2})^t)^{1/t} A^{1/2}
//!
//! with t in [-1, 1] \ {0}. The power family interpolates the harmonic
//! (t = -1) and arithmetic (t = 1) means; every member lies between the
//! harmonic and arithmetic means of the same weight.
//!
//! `refinement_term` builds 2 r M m (A^{-1} nabla B^{-1} - A^{-1} # B^{-1})
//! with r = min(nu, 1 - nu), the positive correction that sharpens reverse
//! arithmetic-geometric inequalities on a spectral bracket [m, M].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{congruence, SpdMatrix, SpectralBounds, SymMatrix};

/// The mean family; `Power(t)` requires t in [-1, 1] \ {0}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
    Power(f64),
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanKind::Arithmetic => write!(f, "arithmetic"),
            MeanKind::Geometric => write!(f, "geometric"),
            MeanKind::Harmonic => write!(f, "harmonic"),
            MeanKind::Power(t) => write!(f, "power:{t}"),
        }
    }
}

impl FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arithmetic" => Ok(MeanKind::Arithmetic),
            "geometric" => Ok(MeanKind::Geometric),
            "harmonic" => Ok(MeanKind::Harmonic),
            _ => {
                if let Some(ts) = s.strip_prefix("power:") {
                    let t: f64 = ts.parse().map_err(|_| {
                        Error::InvalidConfig(format!("cannot parse power exponent in `{s}`"))
                    })?;
                    validate_power_exponent(t)?;
                    Ok(MeanKind::Power(t))
                } else {
                    Err(Error::InvalidConfig(format!(
                        "unknown mean kind `{s}` (expected arithmetic, geometric, harmonic, power:<t>)"
                    )))
                }
            }
        }
    }
}

/// A mean kind together with its weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanDescriptor {
    kind: MeanKind,
    nu: f64,
}

impl MeanDescriptor {
    pub fn new(kind: MeanKind, nu: f64) -> Result<Self> {
        validate_weight(nu)?;
        if let MeanKind::Power(t) = kind {
            validate_power_exponent(t)?;
        }
        Ok(MeanDescriptor { kind, nu })
    }

    pub fn kind(&self) -> MeanKind {
        self.kind
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// r = min(nu, 1 - nu).
    pub fn r(&self) -> f64 {
        self.nu.min(1.0 - self.nu)
    }

    pub fn evaluate(&self, a: &SpdMatrix, b: &SpdMatrix) -> Result<SpdMatrix> {
        match self.kind {
            MeanKind::Arithmetic => arithmetic_mean(a, b, self.nu),
            MeanKind::Geometric => geometric_mean(a, b, self.nu),
            MeanKind::Harmonic => harmonic_mean(a, b, self.nu),
            MeanKind::Power(t) => power_mean(a, b, self.nu, t),
        }
    }
}

impl fmt::Display for MeanDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[nu={}]", self.kind, self.nu)
    }
}

/// Weights live in [0, 1].
pub fn validate_weight(nu: f64) -> Result<()> {
    if !nu.is_finite() || !(0.0..=1.0).contains(&nu) {
        return Err(Error::InvalidWeight { nu });
    }
    Ok(())
}

fn validate_power_exponent(t: f64) -> Result<()> {
    if !t.is_finite() || t == 0.0 || !(-1.0..=1.0).contains(&t) {
        return Err(Error::InvalidPowerExponent { t });
    }
    Ok(())
}

fn check_same_dim(a: &SpdMatrix, b: &SpdMatrix) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: format!("{0}x{0}", a.n()),
            right: format!("{0}x{0}", b.n()),
        });
    }
    Ok(())
}

/// (1 - nu) A + nu B.
pub fn arithmetic_mean(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<SpdMatrix> {
    validate_weight(nu)?;
    check_same_dim(a, b)?;
    SpdMatrix::new(a.sym().scale(1.0 - nu).add(&b.sym().scale(nu)))
}

/// A^{1/2} (A^{-1/2} B A^{-1/2})^nu A^{1/2}.
pub fn geometric_mean(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<SpdMatrix> {
    validate_weight(nu)?;
    check_same_dim(a, b)?;
    let root = a.power(0.5)?;
    let inv_root = a.power(-0.5)?;
    let inner = SpdMatrix::new(congruence(inv_root.as_matrix(), b.sym())?)?;
    let powered = inner.power(nu)?;
    SpdMatrix::new(congruence(root.as_matrix(), powered.sym())?)
}

/// ((1 - nu) A^{-1} + nu B^{-1})^{-1}.
pub fn harmonic_mean(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<SpdMatrix> {
    validate_weight(nu)?;
    check_same_dim(a, b)?;
    let combo = arithmetic_mean(&a.inverse()?, &b.inverse()?, nu)?;
    combo.inverse()
}

/// A^{1/2} ((1 - nu) I + nu (A^{-1/2} B A^{-1/2})^t)^{1/t} A^{1/2}.
pub fn power_mean(a: &SpdMatrix, b: &SpdMatrix, nu: f64, t: f64) -> Result<SpdMatrix> {
    validate_weight(nu)?;
    validate_power_exponent(t)?;
    check_same_dim(a, b)?;
    let root = a.power(0.5)?;
    let inv_root = a.power(-0.5)?;
    let inner = SpdMatrix::new(congruence(inv_root.as_matrix(), b.sym())?)?;
    let powered = inner.power(t)?;
    let combo = SpdMatrix::new(powered.sym().scale(nu).add_scaled_identity(1.0 - nu))?;
    let lifted = combo.power(1.0 / t)?;
    SpdMatrix::new(congruence(root.as_matrix(), lifted.sym())?)
}

/// 2 r M m (A^{-1} nabla B^{-1} - A^{-1} # B^{-1}) with r = min(nu, 1 - nu).
/// Positive semidefinite; exactly zero when r = 0. The bracket [m, M] only
/// contributes the scalar factor M m; whether it brackets the spectra is
/// the caller's (verifier's) concern.
pub fn refinement_term(
    a: &SpdMatrix,
    b: &SpdMatrix,
    nu: f64,
    bounds: &SpectralBounds,
) -> Result<SymMatrix> {
    validate_weight(nu)?;
    check_same_dim(a, b)?;
    let r = nu.min(1.0 - nu);
    if r == 0.0 {
        return Ok(SymMatrix::zeros(a.n()));
    }
    let ai = a.inverse()?;
    let bi = b.inverse()?;
    let nabla = arithmetic_mean(&ai, &bi, 0.5)?;
    let sharp = geometric_mean(&ai, &bi, 0.5)?;
    let factor = 2.0 * r * bounds.upper() * bounds.m();
    Ok(nabla.sym().sub(sharp.sym()).scale(factor))
}
