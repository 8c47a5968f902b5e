//! Randomized instance generation and the verification suite.
//!
//! Reproducibility contract: every (inequality, trial) pair draws from its
//! own ChaCha stream, keyed by the catalog index and the trial number, so
//! results do not depend on which ids run or in what order. Trial indices
//! are decoded in mixed radix over (dims, nu_grid, p_grid, bounds), which
//! walks the whole parameter grid before any combination repeats.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::inequalities::{
    check, AlphaVariant, CheckInput, InequalityId, PolyaSzegoBounds, VerifierParams,
};
use crate::linalg::{Matrix, SpdMatrix, SpectralBounds, SymMatrix, TolerancePolicy};
use crate::means::{MeanDescriptor, MeanKind};
use crate::posmaps::PositiveUnitalMap;

/// Parameter grids and budget for one suite run.
#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub dims: Vec<usize>,
    pub bounds: Vec<SpectralBounds>,
    pub nu_grid: Vec<f64>,
    pub p_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub alpha_variant: AlphaVariant,
    /// Multiplies every derived constant; 1 for honest verification.
    pub alpha_scale: f64,
    pub tol: TolerancePolicy,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            dims: vec![1, 2, 3, 4, 5, 6],
            bounds: vec![
                SpectralBounds::new(1.0, 3.0).expect("static bounds"),
                SpectralBounds::new(3.0, 7.0).expect("static bounds"),
                SpectralBounds::new(0.5, 50.0).expect("static bounds"),
            ],
            nu_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            p_grid: vec![0.5, 1.0, 2.0, 3.0, 5.0],
            trials: 100,
            seed: 42,
            alpha_variant: AlphaVariant::Body,
            alpha_scale: 1.0,
            tol: TolerancePolicy::default(),
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.dims.is_empty() || self.dims.iter().any(|&n| n == 0 || n > 32) {
            return Err(Error::InvalidConfig(
                "dims must be non-empty, each in 1..=32".into(),
            ));
        }
        if self.bounds.is_empty() {
            return Err(Error::InvalidConfig("at least one bounds pair".into()));
        }
        if self.nu_grid.is_empty() || self.nu_grid.iter().any(|&nu| !(0.0..=1.0).contains(&nu)) {
            return Err(Error::InvalidConfig("nu grid must live in [0, 1]".into()));
        }
        if self.p_grid.is_empty() || self.p_grid.iter().any(|&p| !p.is_finite() || p <= 0.0) {
            return Err(Error::InvalidConfig("p grid must be positive".into()));
        }
        if !self.alpha_scale.is_finite() || self.alpha_scale <= 0.0 {
            return Err(Error::InvalidConfig("alpha_scale must be positive".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// primitive samplers

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Modified Gram–Schmidt, run twice; n x n Gaussian input is full rank
/// with probability 1, degenerate draws are resampled.
fn orthonormalize(mut g: Matrix) -> Option<Matrix> {
    let (rows, cols) = (g.rows(), g.cols());
    for _pass in 0..2 {
        for j in 0..cols {
            let mut col = g.column(j);
            for k in 0..j {
                let prev = g.column(k);
                let dot: f64 = col.iter().zip(prev.iter()).map(|(x, y)| x * y).sum();
                for i in 0..rows {
                    col[i] -= dot * prev[i];
                }
            }
            let norm: f64 = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-10 {
                return None;
            }
            for value in &mut col {
                *value /= norm;
            }
            g.set_column(j, &col);
        }
    }
    // Canonical signs: leading diagonal non-negative, so a given Gaussian
    // draw maps to exactly one orthonormal frame.
    for j in 0..cols {
        if g.get(j, j) < 0.0 {
            let col: Vec<f64> = g.column(j).iter().map(|v| -v).collect();
            g.set_column(j, &col);
        }
    }
    Some(g)
}

/// Haar-like random orthogonal matrix.
pub fn sample_orthogonal(n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        if let Some(q) = orthonormalize(gaussian_matrix(n, n, rng)) {
            return q;
        }
    }
}

/// Random isometry: rows x cols with orthonormal columns (rows >= cols).
pub fn sample_isometry(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    assert!(cols >= 1 && rows >= cols, "isometry needs rows >= cols >= 1");
    loop {
        if let Some(t) = orthonormalize(gaussian_matrix(rows, cols, rng)) {
            return t;
        }
    }
}

/// SPD matrix with spectrum inside [m, M]. For n >= 2 the extreme
/// eigenvalues are pinned to the endpoints so sampled instances actually
/// exercise the bounds; n = 1 draws uniformly from the interval.
pub fn sample_spd(n: usize, bounds: &SpectralBounds, rng: &mut impl Rng) -> SpdMatrix {
    let (m, upper) = (bounds.m(), bounds.upper());
    let mut lambda = Vec::with_capacity(n);
    if n == 1 {
        lambda.push(m + (upper - m) * rng.gen::<f64>());
    } else {
        lambda.push(upper);
        lambda.push(m);
        for _ in 2..n {
            lambda.push(m + (upper - m) * rng.gen::<f64>());
        }
    }
    let q = sample_orthogonal(n, rng);
    SpdMatrix::from_eigenpairs(&q, &lambda).expect("positive prescribed spectrum")
}

/// PSD matrix with spectrum in [0, 2]; `include_zero` pins one eigenvalue
/// to exactly zero, putting the instance on the boundary of the cone.
pub fn sample_psd(n: usize, include_zero: bool, rng: &mut impl Rng) -> SymMatrix {
    let q = sample_orthogonal(n, rng);
    let mut lambda: Vec<f64> = (0..n).map(|_| 2.0 * rng.gen::<f64>()).collect();
    if include_zero {
        lambda[0] = 0.0;
    }
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut sum = 0.0;
            for (k, l) in lambda.iter().enumerate() {
                sum += l * q.get(i, k) * q.get(j, k);
            }
            out.set_sym(i, j, sum);
        }
    }
    out
}

/// Uniform direction on the unit sphere.
pub fn sample_unit_vector(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return x.iter().map(|v| v / norm).collect();
        }
    }
}

/// Random positive unital map on n x n inputs: the identity, the
/// normalized trace, an isometry congruence (possibly dimension-reducing),
/// a block average when n factors, or a convex combination of orthogonal
/// congruences.
pub fn sample_map(n: usize, rng: &mut impl Rng) -> PositiveUnitalMap {
    let choices = if n >= 2 && n % 2 == 0 { 5 } else { 4 };
    match rng.gen_range(0..choices) {
        0 => PositiveUnitalMap::identity(n),
        1 => PositiveUnitalMap::normalized_trace(n),
        2 => {
            let cols = rng.gen_range(1..=n);
            PositiveUnitalMap::isometry_congruence(sample_isometry(n, cols, rng))
        }
        3 => {
            let parts = rng.gen_range(2..=3);
            let weights: Vec<f64> = {
                let raw: Vec<f64> = (0..parts).map(|_| rng.gen::<f64>() + 0.1).collect();
                let total: f64 = raw.iter().sum();
                raw.iter().map(|w| w / total).collect()
            };
            let mut combo = Vec::with_capacity(parts);
            for w in weights {
                let part = PositiveUnitalMap::isometry_congruence(sample_orthogonal(n, rng))
                    .expect("orthogonal congruence");
                combo.push((w, part));
            }
            PositiveUnitalMap::convex_combination(combo)
        }
        _ => PositiveUnitalMap::block_average(2, n / 2),
    }
    .expect("constructed from valid pieces")
}

// ---------------------------------------------------------------------------
// suite runner

/// Per-id tally over one suite run. Every trial lands in exactly one of
/// passed / failed / rejected.
#[derive(Debug, Clone, Serialize)]
pub struct IdOutcome {
    pub id: InequalityId,
    pub passed: usize,
    pub failed: usize,
    pub rejected: usize,
    /// Smallest gap observed across evaluated (non-rejected) trials;
    /// absent when every trial was rejected.
    pub worst_gap: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub ids: Vec<IdOutcome>,
}

impl SuiteReport {
    pub fn total_failed(&self) -> usize {
        self.ids.iter().map(|o| o.failed).sum()
    }

    pub fn total_passed(&self) -> usize {
        self.ids.iter().map(|o| o.passed).sum()
    }
}

/// Runs `trials` randomized checks of every id in `ids`.
pub fn run_suite(config: &SampleConfig, ids: &[InequalityId]) -> Result<SuiteReport> {
    config.validate()?;
    let mut outcomes = Vec::with_capacity(ids.len());
    for &id in ids {
        let mut outcome = IdOutcome {
            id,
            passed: 0,
            failed: 0,
            rejected: 0,
            worst_gap: None,
        };
        for trial in 0..config.trials {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(((id.index() as u64) << 32) | trial as u64);
            match run_trial(id, config, trial, &mut rng) {
                Ok(report) => {
                    if report.holds {
                        outcome.passed += 1;
                    } else {
                        outcome.failed += 1;
                    }
                    let better = outcome.worst_gap.map_or(true, |g| report.gap < g);
                    if better {
                        outcome.worst_gap = Some(report.gap);
                    }
                }
                Err(err) if err.is_hypothesis_violation() => outcome.rejected += 1,
                Err(err) => return Err(err),
            }
        }
        outcomes.push(outcome);
    }
    Ok(SuiteReport {
        seed: config.seed,
        trials: config.trials,
        ids: outcomes,
    })
}

fn grid_pick<T: Copy>(grid: &[T], cursor: &mut usize) -> T {
    let value = grid[*cursor % grid.len()];
    *cursor /= grid.len();
    value
}

fn run_trial(
    id: InequalityId,
    config: &SampleConfig,
    trial: usize,
    rng: &mut ChaCha8Rng,
) -> Result<crate::inequalities::InequalityReport> {
    let mut cursor = trial;
    let mut dim = grid_pick(&config.dims, &mut cursor);
    let nu = grid_pick(&config.nu_grid, &mut cursor);
    let p = grid_pick(&config.p_grid, &mut cursor);
    let bounds = grid_pick(&config.bounds, &mut cursor);
    if id == InequalityId::ScalarKm {
        dim = 1; // the statement is scalar
    }

    let mut params = VerifierParams {
        nu,
        p,
        bounds: Some(bounds),
        ps: Some(PolyaSzegoBounds::from_shared(&bounds)),
        alpha_variant: config.alpha_variant,
        alpha_scale: config.alpha_scale,
        tol: config.tol.clone(),
        ..VerifierParams::default()
    };

    let input = match id {
        InequalityId::Choi
        | InequalityId::BasicBound
        | InequalityId::Kantorovich
        | InequalityId::Thm213B => CheckInput::Single {
            a: sample_spd(dim, &bounds, rng),
        },
        InequalityId::Prop215 => CheckInput::WithVector {
            a: sample_spd(dim, &bounds, rng),
            x: sample_unit_vector(dim, rng),
        },
        InequalityId::Cor214 => {
            let count = 2 + trial % 2;
            let a_list = (0..count).map(|_| sample_spd(dim, &bounds, rng)).collect();
            let b_list = (0..count).map(|_| sample_spd(dim, &bounds, rng)).collect();
            CheckInput::Tuples { a_list, b_list }
        }
        _ => CheckInput::Pair {
            a: sample_spd(dim, &bounds, rng),
            b: sample_spd(dim, &bounds, rng),
        },
    };

    if takes_map(id) {
        params.map = Some(sample_map(dim, rng));
    }
    if takes_mean_pair(id) {
        params.sigma = Some(sample_mean(nu, rng)?);
        params.tau = Some(sample_mean(nu, rng)?);
    }

    check(id, &params, &input)
}

fn takes_map(id: InequalityId) -> bool {
    !matches!(
        id,
        InequalityId::Amgm
            | InequalityId::Lemma21
            | InequalityId::Lemma22
            | InequalityId::Lemma23
            | InequalityId::ScalarKm
            | InequalityId::Eq25
            | InequalityId::BasicBound
            | InequalityId::Cor212
            | InequalityId::Cor214
            | InequalityId::Prop215
    )
}

fn takes_mean_pair(id: InequalityId) -> bool {
    matches!(
        id,
        InequalityId::HoaFu
            | InequalityId::HoaFuMaps
            | InequalityId::Lemma24
            | InequalityId::Prop25
    )
}

/// A random mean between harmonic and arithmetic, at the given weight.
fn sample_mean(nu: f64, rng: &mut impl Rng) -> Result<MeanDescriptor> {
    let kind = match rng.gen_range(0..4) {
        0 => MeanKind::Arithmetic,
        1 => MeanKind::Geometric,
        2 => MeanKind::Harmonic,
        _ => {
            const EXPONENTS: [f64; 4] = [-1.0, -0.5, 0.5, 1.0];
            MeanKind::Power(EXPONENTS[rng.gen_range(0..EXPONENTS.len())])
        }
    };
    MeanDescriptor::new(kind, nu)
}
