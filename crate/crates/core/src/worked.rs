//! The two built-in reference cases ("2.9" and "2.10"): fixed inputs,
//! recomputation through the full pipeline, and comparison against the
//! published reference values with per-entry deviations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpdMatrix, SpectralBounds, SymMatrix};
use crate::means::{arithmetic_mean, geometric_mean, refinement_term};
use crate::posmaps::PositiveUnitalMap;

/// One golden comparison. `asserted` distinguishes verdict-carrying checks
/// from report-only lines (a reference value known to be inconsistent is
/// displayed, never asserted).
#[derive(Debug, Clone, Serialize)]
pub struct GoldenCheck {
    pub label: String,
    pub observed: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub asserted: bool,
    pub ok: bool,
}

impl GoldenCheck {
    fn close(label: &str, observed: f64, reference: f64, tolerance: f64) -> Self {
        GoldenCheck {
            label: label.to_string(),
            observed,
            reference,
            tolerance,
            asserted: true,
            ok: (observed - reference).abs() <= tolerance,
        }
    }

    fn positive(label: &str, observed: f64) -> Self {
        GoldenCheck {
            label: label.to_string(),
            observed,
            reference: 0.0,
            tolerance: 0.0,
            asserted: true,
            ok: observed > 0.0,
        }
    }

    fn informational(label: &str, observed: f64, reference: f64) -> Self {
        GoldenCheck {
            label: label.to_string(),
            observed,
            reference,
            tolerance: 0.0,
            asserted: false,
            ok: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedMatrix {
    pub label: String,
    pub data: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WorkedCase {
    pub case: String,
    pub matrices: Vec<NamedMatrix>,
    pub checks: Vec<GoldenCheck>,
    pub notes: Vec<String>,
    /// True iff every asserted check passed.
    pub ok: bool,
}

impl WorkedCase {
    fn seal(mut self) -> Self {
        self.ok = self.checks.iter().all(|c| !c.asserted || c.ok);
        self
    }
}

/// Largest entrywise deviation from a printed 2x2 reference.
fn max_deviation(x: &SymMatrix, reference: [[f64; 2]; 2]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((x.get(i, j) - reference[i][j]).abs());
        }
    }
    worst
}

fn named(label: &str, x: &SymMatrix) -> NamedMatrix {
    NamedMatrix {
        label: label.to_string(),
        data: x.to_rows(),
    }
}

pub fn run_case(which: &str) -> Result<WorkedCase> {
    match which {
        "2.9" => case_2_9(),
        "2.10" => case_2_10(),
        other => Err(Error::InvalidConfig(format!(
            "unknown example case {other:?}; expected \"2.9\" or \"2.10\""
        ))),
    }
}

/// Scalar-map case: nu = 1/2, p = 3, Phi = tr/2, bounds [1, 3].
pub fn case_2_9() -> Result<WorkedCase> {
    let a = SpdMatrix::from_rows(&[vec![1.75, 0.433], vec![0.433, 1.25]])?;
    let b = SpdMatrix::from_rows(&[vec![2.5, 0.5], vec![0.5, 2.5]])?;
    let bounds = SpectralBounds::new(1.0, 3.0)?;
    let phi = PositiveUnitalMap::normalized_trace(2)?;

    let nabla = arithmetic_mean(&a, &b, 0.5)?;
    let refined = SpdMatrix::new(
        nabla
            .sym()
            .add(&refinement_term(&a, &b, 0.5, &bounds)?),
    )?;

    let phi3 = |x: &SpdMatrix| -> Result<f64> {
        Ok(SpdMatrix::new(phi.apply(x.sym())?)?.power(3.0)?.sym().get(0, 0))
    };
    let phi3_nabla = phi3(&nabla)?;
    let phi3_refined = phi3(&refined)?;

    let checks = vec![
        GoldenCheck::close(
            "nabla max entry deviation from [[2.1250, 0.4665], [0.4665, 1.8750]]",
            max_deviation(nabla.sym(), [[2.1250, 0.4665], [0.4665, 1.8750]]),
            0.0,
            5e-5,
        ),
        GoldenCheck::close(
            "refined LHS max entry deviation from [[2.1601, 0.4260], [0.4260, 2.0016]]",
            max_deviation(refined.sym(), [[2.1601, 0.4260], [0.4260, 2.0016]]),
            0.0,
            5e-4,
        ),
        GoldenCheck::close("Phi^3(nabla)", phi3_nabla, 8.0, 1e-12),
        GoldenCheck::close("Phi^3(refined)", phi3_refined, 9.0095, 1e-2),
        GoldenCheck::close(
            "Phi^3(refined) - Phi^3(nabla)",
            phi3_refined - phi3_nabla,
            1.0095,
            1e-2,
        ),
    ];
    Ok(WorkedCase {
        case: "2.9".into(),
        matrices: vec![
            named("a", a.sym()),
            named("b", b.sym()),
            named("nabla", nabla.sym()),
            named("refined_lhs", refined.sym()),
        ],
        checks,
        notes: vec![
            "weights: nu = 1/2, p = 3, bounds [1, 3], Phi = normalized trace".into(),
        ],
        ok: false,
    }
    .seal())
}

/// Rounds every entry to four decimal places — the precision at which the
/// reference displays its intermediate matrices (and then keeps computing
/// with the displayed, rounded copies).
fn round_4dp(x: &SymMatrix) -> Result<SymMatrix> {
    let rows: Vec<Vec<f64>> = x
        .to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|v| (v * 1e4).round() / 1e4).collect())
        .collect();
    SymMatrix::from_rows(&rows)
}

/// Rotation-map case: nu = 1/2, p = 5/3, Phi = T' X T, bounds [3, 7].
///
/// The reference's printed refined matrix and difference diagonal follow
/// its own displayed intermediates: it rounds the two inverse means to the
/// four decimals it prints, then continues from the rounded copies. The
/// golden comparison replays that rounding (reproducing the printed values
/// essentially exactly); the exact recomputation is reported alongside.
pub fn case_2_10() -> Result<WorkedCase> {
    let a = SpdMatrix::from_rows(&[vec![5.0, -2.0], vec![-2.0, 5.0]])?;
    let b = SpdMatrix::from_rows(&[vec![4.75, 0.433], vec![0.433, 4.25]])?;
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let t = Matrix::from_rows(&[vec![c, c], vec![-c, c]])?;
    let phi = PositiveUnitalMap::isometry_congruence(t)?;
    let bounds = SpectralBounds::new(3.0, 7.0)?;
    let p = 5.0 / 3.0;

    let nabla = arithmetic_mean(&a, &b, 0.5)?;
    let refined = SpdMatrix::new(
        nabla
            .sym()
            .add(&refinement_term(&a, &b, 0.5, &bounds)?),
    )?;

    // Replay of the reference arithmetic: same formula, inverse means
    // rounded to their displayed precision before the gap is taken.
    let (ia, ib) = (a.inverse()?, b.inverse()?);
    let inv_nabla = round_4dp(arithmetic_mean(&ia, &ib, 0.5)?.sym())?;
    let inv_sharp = round_4dp(geometric_mean(&ia, &ib, 0.5)?.sym())?;
    let factor = 2.0 * 0.5 * bounds.upper() * bounds.m();
    let refined_replay =
        SpdMatrix::new(nabla.sym().add(&inv_nabla.sub(&inv_sharp).scale(factor)))?;

    let phi_pow = |x: &SpdMatrix| -> Result<SpdMatrix> {
        SpdMatrix::new(phi.apply(x.sym())?)?.power(p)
    };
    let difference = phi_pow(&refined)?.sym().sub(phi_pow(&nabla)?.sym());
    let replay_difference = phi_pow(&refined_replay)?.sym().sub(phi_pow(&nabla)?.sym());
    let lambda_min = crate::linalg::eigh(&difference)?.lambda_min();

    let printed_refined = [[5.0283, -0.7730], [-0.7730, 4.7909]];
    let checks = vec![
        GoldenCheck::close(
            "nabla max entry deviation from [[4.8750, -0.7835], [-0.7835, 4.6250]]",
            max_deviation(nabla.sym(), [[4.8750, -0.7835], [-0.7835, 4.6250]]),
            0.0,
            5e-4,
        ),
        GoldenCheck::close(
            "refined LHS (4dp replay) max entry deviation from [[5.0283, -0.7730], [-0.7730, 4.7909]]",
            max_deviation(refined_replay.sym(), printed_refined),
            0.0,
            5e-4,
        ),
        GoldenCheck::informational(
            "refined LHS (exact) max entry deviation from the same reference",
            max_deviation(refined.sym(), printed_refined),
            0.0,
        ),
        GoldenCheck::close(
            "difference[0][0] (4dp replay)",
            replay_difference.get(0, 0),
            0.7838,
            2e-3,
        ),
        GoldenCheck::close(
            "difference[1][1] (4dp replay)",
            replay_difference.get(1, 1),
            0.7199,
            2e-3,
        ),
        GoldenCheck::informational("difference[0][0] (exact)", difference.get(0, 0), 0.7838),
        GoldenCheck::informational("difference[1][1] (exact)", difference.get(1, 1), 0.7199),
        GoldenCheck::positive("difference lambda_min (exact)", lambda_min),
        GoldenCheck::informational(
            "difference[0][1] (reference prints -1.0172; reported, not asserted)",
            difference.get(0, 1),
            -1.0172,
        ),
    ];
    Ok(WorkedCase {
        case: "2.10".into(),
        matrices: vec![
            named("a", a.sym()),
            named("b", b.sym()),
            named("nabla", nabla.sym()),
            named("refined_lhs", refined.sym()),
            named("refined_lhs_4dp_replay", refined_replay.sym()),
            named("difference", &difference),
            named("difference_4dp_replay", &replay_difference),
        ],
        checks,
        notes: vec![
            "weights: nu = 1/2, p = 5/3, bounds [3, 7], Phi = rotation congruence".into(),
            "the reference computes onward from its displayed 4-decimal intermediates; \
             replaying that rounding reproduces its refined matrix and difference diagonal \
             exactly, while the exact pipeline lands ~5e-3 away (both reported)"
                .into(),
            "the reference off-diagonal -1.0172 cannot follow from these inputs under either \
             pipeline: it would make the difference indefinite, contradicting its own \
             positivity claim; the recomputed value is displayed alongside it"
                .into(),
        ],
        ok: false,
    }
    .seal())
}
