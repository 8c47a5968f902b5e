//! Catalog of inequality verifiers.
//!
//! Each catalog id names one inequality between expressions built from
//! operator means, positive unital maps, and spectral-bound constants.
//! [`check`] evaluates both sides on concrete inputs, verifies every
//! hypothesis first (spectral bounds are checked, never trusted), and
//! reports the Loewner gap together with a holds verdict.

mod catalog;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{SpdMatrix, SpectralBounds, TolerancePolicy};
use crate::means::MeanDescriptor;
use crate::posmaps::PositiveUnitalMap;

pub use catalog::{check, norm_order_equivalence, EquivalenceCheck};

/// Which branch family the alpha constant uses; see [`alpha_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaVariant {
    /// max{(M+m)^2/(4Mm), (M+m)^2/(4^{2/p} M m)} — used everywhere by default.
    Body,
    /// max{(M+m)^2/(4Mm), (M+m)^2/(4^p M m)} — exposed for comparison only.
    Abstract,
}

impl fmt::Display for AlphaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaVariant::Body => write!(f, "body"),
            AlphaVariant::Abstract => write!(f, "abstract"),
        }
    }
}

impl FromStr for AlphaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "body" => Ok(AlphaVariant::Body),
            "abstract" => Ok(AlphaVariant::Abstract),
            other => Err(Error::InvalidConfig(format!(
                "alpha variant must be `body` or `abstract`, got `{other}`"
            ))),
        }
    }
}

/// alpha(m, M, p) = max{(M+m)^2/(4Mm), (M+m)^2/(4^{2/p} M m)}.
///
/// Equals the Kantorovich ratio for p <= 2 and the 4^{2/p} branch for
/// p >= 2; the two branches agree at p = 2. Always >= 1.
pub fn alpha(bounds: &SpectralBounds, p: f64) -> Result<f64> {
    alpha_with(bounds, p, AlphaVariant::Body)
}

/// [`alpha`] with an explicit branch family.
pub fn alpha_with(bounds: &SpectralBounds, p: f64, variant: AlphaVariant) -> Result<f64> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::InvalidAlphaExponent { p });
    }
    let (m, upper) = (bounds.m(), bounds.upper());
    let square = (upper + m) * (upper + m);
    let first = square / (4.0 * upper * m);
    let exponent = match variant {
        AlphaVariant::Body => 2.0 / p,
        AlphaVariant::Abstract => p,
    };
    let second = square / (4f64.powf(exponent) * upper * m);
    Ok(first.max(second))
}

/// Identifier of one catalog inequality. `Display`/`FromStr` round-trip
/// through the UPPER_SNAKE names that the CLI and reports use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    Amgm,
    LinReverse,
    LinSq,
    LinSqMaps,
    PLe2,
    PLe2Maps,
    FuHe,
    FuHeMaps,
    HoaFu,
    HoaFuMaps,
    Choi,
    Lemma21,
    Lemma22,
    Lemma23,
    Lemma24,
    Prop25,
    ScalarKm,
    Thm27A,
    Thm27B,
    Eq24,
    Eq25,
    Eq26,
    Remark28A,
    Remark28B,
    BasicBound,
    Cor211,
    Cor212,
    PolyaSzego,
    Kantorovich,
    Thm213A,
    Thm213B,
    Eq211,
    Eq212,
    Cor214,
    Prop215,
}

impl InequalityId {
    /// Every catalog id, in canonical order. The position in this list is
    /// the id's stable index (used to derive per-id RNG streams).
    pub const ALL: [InequalityId; 35] = [
        InequalityId::Amgm,
        InequalityId::LinReverse,
        InequalityId::LinSq,
        InequalityId::LinSqMaps,
        InequalityId::PLe2,
        InequalityId::PLe2Maps,
        InequalityId::FuHe,
        InequalityId::FuHeMaps,
        InequalityId::HoaFu,
        InequalityId::HoaFuMaps,
        InequalityId::Choi,
        InequalityId::Lemma21,
        InequalityId::Lemma22,
        InequalityId::Lemma23,
        InequalityId::Lemma24,
        InequalityId::Prop25,
        InequalityId::ScalarKm,
        InequalityId::Thm27A,
        InequalityId::Thm27B,
        InequalityId::Eq24,
        InequalityId::Eq25,
        InequalityId::Eq26,
        InequalityId::Remark28A,
        InequalityId::Remark28B,
        InequalityId::BasicBound,
        InequalityId::Cor211,
        InequalityId::Cor212,
        InequalityId::PolyaSzego,
        InequalityId::Kantorovich,
        InequalityId::Thm213A,
        InequalityId::Thm213B,
        InequalityId::Eq211,
        InequalityId::Eq212,
        InequalityId::Cor214,
        InequalityId::Prop215,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InequalityId::Amgm => "AMGM",
            InequalityId::LinReverse => "LIN_REVERSE",
            InequalityId::LinSq => "LIN_SQ",
            InequalityId::LinSqMaps => "LIN_SQ_MAPS",
            InequalityId::PLe2 => "P_LE_2",
            InequalityId::PLe2Maps => "P_LE_2_MAPS",
            InequalityId::FuHe => "FU_HE",
            InequalityId::FuHeMaps => "FU_HE_MAPS",
            InequalityId::HoaFu => "HOA_FU",
            InequalityId::HoaFuMaps => "HOA_FU_MAPS",
            InequalityId::Choi => "CHOI",
            InequalityId::Lemma21 => "LEMMA_2_1",
            InequalityId::Lemma22 => "LEMMA_2_2",
            InequalityId::Lemma23 => "LEMMA_2_3",
            InequalityId::Lemma24 => "LEMMA_2_4",
            InequalityId::Prop25 => "PROP_2_5",
            InequalityId::ScalarKm => "SCALAR_KM",
            InequalityId::Thm27A => "THM_2_7_A",
            InequalityId::Thm27B => "THM_2_7_B",
            InequalityId::Eq24 => "EQ_2_4",
            InequalityId::Eq25 => "EQ_2_5",
            InequalityId::Eq26 => "EQ_2_6",
            InequalityId::Remark28A => "REMARK_2_8_A",
            InequalityId::Remark28B => "REMARK_2_8_B",
            InequalityId::BasicBound => "BASIC_BOUND",
            InequalityId::Cor211 => "COR_2_11",
            InequalityId::Cor212 => "COR_2_12",
            InequalityId::PolyaSzego => "POLYA_SZEGO",
            InequalityId::Kantorovich => "KANTOROVICH",
            InequalityId::Thm213A => "THM_2_13_A",
            InequalityId::Thm213B => "THM_2_13_B",
            InequalityId::Eq211 => "EQ_2_11",
            InequalityId::Eq212 => "EQ_2_12",
            InequalityId::Cor214 => "COR_2_14",
            InequalityId::Prop215 => "PROP_2_15",
        }
    }

    /// Stable position in [`InequalityId::ALL`].
    pub fn index(&self) -> usize {
        Self::ALL
            .iter()
            .position(|candidate| candidate == self)
            .expect("every id is listed in ALL")
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

impl Serialize for InequalityId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Hypothesis 0 < m1^2 <= A <= M1^2, 0 < m2^2 <= B <= M2^2 with the
/// derived ratios m = m2/M1 and M = M2/m1, so that
/// m^2 <= A^{-1/2} B A^{-1/2} <= M^2 holds whenever the operands obey
/// their intervals (the sharp scalar case A = diag(M1^2, m1^2),
/// B = diag(m2^2, M2^2) attains the reverse-ratio constant exactly).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyaSzegoBounds {
    m1: f64,
    upper1: f64,
    m2: f64,
    upper2: f64,
}

impl PolyaSzegoBounds {
    pub fn new(m1: f64, upper1: f64, m2: f64, upper2: f64) -> Result<Self> {
        for (label, v, upper) in [("first", m1, upper1), ("second", m2, upper2)] {
            if !(v.is_finite() && upper.is_finite() && v > 0.0 && v <= upper) {
                return Err(Error::InvalidConfig(format!(
                    "{label} bound pair must satisfy 0 < lower <= upper, got ({v}, {upper})"
                )));
            }
        }
        let bounds = PolyaSzegoBounds { m1, upper1, m2, upper2 };
        if bounds.ratio_m() > bounds.ratio_upper() {
            return Err(Error::InvalidConfig(format!(
                "derived ratios require m2/M1 <= M2/m1, got {} > {}",
                bounds.ratio_m(),
                bounds.ratio_upper()
            )));
        }
        Ok(bounds)
    }

    /// Bounds (m1, M1, m2, M2) = (sqrt(m), sqrt(M), sqrt(m), sqrt(M)):
    /// both operands range over [m, M] directly.
    pub fn from_shared(bounds: &SpectralBounds) -> Self {
        let (lo, hi) = (bounds.m().sqrt(), bounds.upper().sqrt());
        PolyaSzegoBounds { m1: lo, upper1: hi, m2: lo, upper2: hi }
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn upper1(&self) -> f64 {
        self.upper1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    pub fn upper2(&self) -> f64 {
        self.upper2
    }

    /// Interval for the first operand: [m1^2, M1^2].
    pub fn first_interval(&self) -> (f64, f64) {
        (self.m1 * self.m1, self.upper1 * self.upper1)
    }

    /// Interval for the second operand: [m2^2, M2^2].
    pub fn second_interval(&self) -> (f64, f64) {
        (self.m2 * self.m2, self.upper2 * self.upper2)
    }

    /// Derived m = m2/M1.
    pub fn ratio_m(&self) -> f64 {
        self.m2 / self.upper1
    }

    /// Derived M = M2/m1.
    pub fn ratio_upper(&self) -> f64 {
        self.upper2 / self.m1
    }

    /// (M + m)/(2 sqrt(mM)) for the derived ratios.
    pub fn reverse_ratio(&self) -> f64 {
        let (m, upper) = (self.ratio_m(), self.ratio_upper());
        (upper + m) / (2.0 * (m * upper).sqrt())
    }
}

/// Parameter bundle for [`check`]. Each id consumes only the fields its
/// statement mentions; the rest are ignored.
#[derive(Debug, Clone)]
pub struct VerifierParams {
    /// Mean weight nu in [0, 1].
    pub nu: f64,
    /// Power exponent p; per-id domain restrictions apply.
    pub p: f64,
    /// Plain two-sided spectral bounds m <= A, B <= M.
    pub bounds: Option<SpectralBounds>,
    /// Squared-parametrization bounds for the Polya–Szego family.
    pub ps: Option<PolyaSzegoBounds>,
    /// First mean for the sigma/tau ids; defaults to arithmetic with `nu`.
    pub sigma: Option<MeanDescriptor>,
    /// Second mean for the sigma/tau ids; defaults to geometric with `nu`.
    pub tau: Option<MeanDescriptor>,
    /// The positive unital map Phi; defaults to the identity map.
    pub map: Option<PositiveUnitalMap>,
    pub alpha_variant: AlphaVariant,
    /// Multiplies every derived constant; exists so the test harness can
    /// confirm that broken constants are detected. Leave at 1.
    pub alpha_scale: f64,
    pub tol: TolerancePolicy,
}

impl Default for VerifierParams {
    fn default() -> Self {
        VerifierParams {
            nu: 0.5,
            p: 1.0,
            bounds: None,
            ps: None,
            sigma: None,
            tau: None,
            map: None,
            alpha_variant: AlphaVariant::Body,
            alpha_scale: 1.0,
            tol: TolerancePolicy::default(),
        }
    }
}

/// Concrete operands for one check.
#[derive(Debug, Clone)]
pub enum CheckInput {
    Single { a: SpdMatrix },
    Pair { a: SpdMatrix, b: SpdMatrix },
    WithVector { a: SpdMatrix, x: Vec<f64> },
    Tuples { a_list: Vec<SpdMatrix>, b_list: Vec<SpdMatrix> },
}

impl CheckInput {
    pub fn pair(a: SpdMatrix, b: SpdMatrix) -> Self {
        CheckInput::Pair { a, b }
    }

    /// Dimension of the operands (first operand for tuples).
    pub fn dim(&self) -> usize {
        match self {
            CheckInput::Single { a } => a.n(),
            CheckInput::Pair { a, .. } => a.n(),
            CheckInput::WithVector { a, .. } => a.n(),
            CheckInput::Tuples { a_list, .. } => a_list.first().map_or(0, SpdMatrix::n),
        }
    }
}

/// Outcome of one verifier run.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub id: InequalityId,
    pub holds: bool,
    /// lambda_min(RHS - LHS) for operator statements; RHS - LHS for
    /// scalar/norm statements; agreement margin for LEMMA_2_3.
    pub gap: f64,
    /// The multiplicative constant the statement uses, when it has one.
    pub alpha: Option<f64>,
    /// Echo of the consumed parameters.
    pub params: serde_json::Value,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub tolerance: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_matches_hand_computed_branches() {
        let b = SpectralBounds::new(1.0, 3.0).unwrap();
        // p <= 2: Kantorovich ratio.
        assert!((alpha(&b, 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((alpha(&b, 0.5).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        // p = 3: 16 / (4^{2/3} * 3).
        let expected = 16.0 / (4f64.powf(2.0 / 3.0) * 3.0);
        assert!((alpha(&b, 3.0).unwrap() - expected).abs() < 1e-12);
        assert!((alpha(&b, 3.0).unwrap() - 2.1165347359576).abs() < 1e-10);
    }

    #[test]
    fn alpha_branches_agree_at_p_two() {
        for (m, upper) in [(1.0, 3.0), (3.0, 7.0), (0.5, 50.0)] {
            let b = SpectralBounds::new(m, upper).unwrap();
            let k = b.kantorovich_ratio();
            let square = (upper + m) * (upper + m);
            let other = square / (4f64.powf(2.0 / 2.0) * upper * m);
            assert!((k - other).abs() <= 1e-15 * k);
            assert!((alpha(&b, 2.0).unwrap() - k).abs() <= 1e-15 * k);
        }
    }

    #[test]
    fn alpha_is_one_for_degenerate_bounds_and_small_p() {
        let b = SpectralBounds::new(2.0, 2.0).unwrap();
        assert!((alpha(&b, 1.0).unwrap() - 1.0).abs() < 1e-15);
        // Large p: the 4^{2/p} branch exceeds 1 even when m = M.
        assert!(alpha(&b, 8.0).unwrap() > 1.0);
    }

    #[test]
    fn alpha_abstract_variant_differs_for_large_p() {
        let b = SpectralBounds::new(1.0, 3.0).unwrap();
        let body = alpha_with(&b, 5.0, AlphaVariant::Body).unwrap();
        let abs = alpha_with(&b, 5.0, AlphaVariant::Abstract).unwrap();
        // 4^5 makes the second branch tiny, so the max falls back to K.
        assert!((abs - 4.0 / 3.0).abs() < 1e-15);
        assert!(body > abs);
    }

    #[test]
    fn alpha_rejects_nonpositive_exponent() {
        let b = SpectralBounds::new(1.0, 2.0).unwrap();
        assert!(matches!(
            alpha(&b, 0.0),
            Err(Error::InvalidAlphaExponent { .. })
        ));
        assert!(alpha(&b, -1.0).is_err());
    }

    #[test]
    fn id_names_round_trip() {
        for id in InequalityId::ALL {
            let parsed: InequalityId = id.name().parse().unwrap();
            assert_eq!(parsed, id);
            assert_eq!(InequalityId::ALL[id.index()], id);
        }
        assert!("NOT_AN_ID".parse::<InequalityId>().is_err());
    }

    #[test]
    fn ps_bounds_derive_ratios() {
        let ps = PolyaSzegoBounds::new(1.0, 2.0, 1.0, 2.0).unwrap();
        assert!((ps.ratio_m() - 0.5).abs() < 1e-15);
        assert!((ps.ratio_upper() - 2.0).abs() < 1e-15);
        assert!((ps.reverse_ratio() - 2.5 / 2.0).abs() < 1e-15);
        assert_eq!(ps.first_interval(), (1.0, 4.0));
        // Asymmetric intervals: m = 3/2, M = 6/1.
        let asym = PolyaSzegoBounds::new(1.0, 2.0, 3.0, 6.0).unwrap();
        assert!((asym.ratio_m() - 1.5).abs() < 1e-15);
        assert!((asym.ratio_upper() - 6.0).abs() < 1e-15);
        assert!(PolyaSzegoBounds::new(0.0, 2.0, 1.0, 2.0).is_err());
        assert!(PolyaSzegoBounds::new(3.0, 2.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn ps_bounds_from_shared_cover_the_plain_interval() {
        let b = SpectralBounds::new(1.0, 3.0).unwrap();
        let ps = PolyaSzegoBounds::from_shared(&b);
        let (lo, hi) = ps.first_interval();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 3.0).abs() < 1e-12);
        assert!((ps.ratio_m() - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((ps.ratio_upper() - 3.0f64.sqrt()).abs() < 1e-12);
    }
}
