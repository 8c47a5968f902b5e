//! Verifier implementations behind [`check`].
//!
//! Conventions shared by every verifier:
//! - hypotheses are verified before anything is evaluated; a violation is
//!   an `Error::HypothesisViolated`, never a failed inequality;
//! - spectral bounds use the cached spectrum of the operand, with the
//!   module tolerance at the scale of the bounds;
//! - `alpha_scale` multiplies whichever constant the statement carries,
//!   so a deliberately broken constant produces honest failures;
//! - operator statements report gap = lambda_min(RHS - LHS); norm and
//!   scalar statements report gap = RHS - LHS.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{
    loewner_leq, psd_power, spectral_norm, SpdMatrix, SpectralBounds, SymMatrix, TolerancePolicy,
};
use crate::means::{
    arithmetic_mean, geometric_mean, refinement_term, validate_weight, MeanDescriptor, MeanKind,
};
use crate::posmaps::PositiveUnitalMap;

use super::{
    alpha_with, CheckInput, InequalityId, InequalityReport, PolyaSzegoBounds, VerifierParams,
};

/// Runs the verifier for `id` on `input` with `params`.
pub fn check(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    match id {
        InequalityId::Amgm => amgm(id, params, input),
        InequalityId::LinReverse => lin_family(id, params, input, LinForm::Plain),
        InequalityId::LinSq => lin_family(id, params, input, LinForm::Squared),
        InequalityId::LinSqMaps => lin_family(id, params, input, LinForm::SquaredMaps),
        InequalityId::PLe2 => lin_family(id, params, input, LinForm::PowerLow),
        InequalityId::PLe2Maps => lin_family(id, params, input, LinForm::PowerLowMaps),
        InequalityId::FuHe => lin_family(id, params, input, LinForm::PowerHigh),
        InequalityId::FuHeMaps => lin_family(id, params, input, LinForm::PowerHighMaps),
        InequalityId::HoaFu => hoa_fu(id, params, input, false),
        InequalityId::HoaFuMaps => hoa_fu(id, params, input, true),
        InequalityId::Choi => choi(id, params, input),
        InequalityId::Lemma21 => lemma_2_1(id, params, input),
        InequalityId::Lemma22 => lemma_2_2(id, params, input),
        InequalityId::Lemma23 => lemma_2_3(id, params, input),
        InequalityId::Lemma24 => lemma_2_4(id, params, input),
        InequalityId::Prop25 => prop_2_5(id, params, input),
        InequalityId::ScalarKm => scalar_km(id, params, input),
        InequalityId::Thm27A => thm_2_7(id, params, input, false),
        InequalityId::Thm27B => thm_2_7(id, params, input, true),
        InequalityId::Eq24 => eq_2_4(id, params, input),
        InequalityId::Eq25 => eq_2_5(id, params, input),
        InequalityId::Eq26 => eq_2_6(id, params, input),
        InequalityId::Remark28A => remark_2_8_a(id, params, input),
        InequalityId::Remark28B => remark_2_8_b(id, params, input),
        InequalityId::BasicBound => basic_bound(id, params, input),
        InequalityId::Cor211 => cor_2_11(id, params, input),
        InequalityId::Cor212 => cor_2_12(id, params, input),
        InequalityId::PolyaSzego => polya_szego(id, params, input),
        InequalityId::Kantorovich => kantorovich(id, params, input),
        InequalityId::Thm213A => thm_2_13_a(id, params, input),
        InequalityId::Thm213B => thm_2_13_b(id, params, input),
        InequalityId::Eq211 => eq_2_11(id, params, input),
        InequalityId::Eq212 => eq_2_12(id, params, input),
        InequalityId::Cor214 => cor_2_14(id, params, input),
        InequalityId::Prop215 => prop_2_15(id, params, input),
    }
}

// ---------------------------------------------------------------------------
// input plumbing

fn require_single<'a>(id: InequalityId, input: &'a CheckInput) -> Result<&'a SpdMatrix> {
    match input {
        CheckInput::Single { a } => Ok(a),
        _ => Err(Error::InputShape {
            id: id.name(),
            expected: "a single matrix `a`",
        }),
    }
}

fn require_pair<'a>(
    id: InequalityId,
    input: &'a CheckInput,
) -> Result<(&'a SpdMatrix, &'a SpdMatrix)> {
    match input {
        CheckInput::Pair { a, b } => {
            if a.n() != b.n() {
                return Err(Error::DimensionMismatch {
                    left: format!("a is {0}x{0}", a.n()),
                    right: format!("b is {0}x{0}", b.n()),
                });
            }
            Ok((a, b))
        }
        _ => Err(Error::InputShape {
            id: id.name(),
            expected: "a pair of matrices `a` and `b`",
        }),
    }
}

fn require_vector<'a>(
    id: InequalityId,
    input: &'a CheckInput,
) -> Result<(&'a SpdMatrix, &'a [f64])> {
    match input {
        CheckInput::WithVector { a, x } => {
            if x.len() != a.n() {
                return Err(Error::DimensionMismatch {
                    left: format!("a is {0}x{0}", a.n()),
                    right: format!("x has length {}", x.len()),
                });
            }
            Ok((a, x))
        }
        _ => Err(Error::InputShape {
            id: id.name(),
            expected: "a matrix `a` and a vector `x`",
        }),
    }
}

fn require_tuples<'a>(
    id: InequalityId,
    input: &'a CheckInput,
) -> Result<(&'a [SpdMatrix], &'a [SpdMatrix])> {
    match input {
        CheckInput::Tuples { a_list, b_list } => {
            if a_list.is_empty() || a_list.len() != b_list.len() {
                return Err(Error::InputShape {
                    id: id.name(),
                    expected: "non-empty `a_list` and `b_list` of equal length",
                });
            }
            let n = a_list[0].n();
            if a_list.iter().chain(b_list.iter()).any(|m| m.n() != n) {
                return Err(Error::InputShape {
                    id: id.name(),
                    expected: "all tuple entries of one dimension",
                });
            }
            Ok((a_list, b_list))
        }
        _ => Err(Error::InputShape {
            id: id.name(),
            expected: "tuples `a_list` and `b_list`",
        }),
    }
}

// ---------------------------------------------------------------------------
// hypothesis plumbing

fn require_bounds(params: &VerifierParams) -> Result<SpectralBounds> {
    params.bounds.ok_or(Error::MissingParam("bounds"))
}

fn require_ps(params: &VerifierParams) -> Result<PolyaSzegoBounds> {
    params.ps.ok_or(Error::MissingParam("ps bounds"))
}

fn verify_interval(
    label: &str,
    a: &SpdMatrix,
    lo: f64,
    hi: f64,
    tol: &TolerancePolicy,
) -> Result<()> {
    let slack = tol.at_scale(&[lo, hi, a.operator_norm()]);
    if a.lambda_min() < lo - slack || a.lambda_max() > hi + slack {
        return Err(Error::HypothesisViolated(format!(
            "spectral bounds violated for {label}: spectrum [{:.6e}, {:.6e}] outside [{lo}, {hi}]",
            a.lambda_min(),
            a.lambda_max(),
        )));
    }
    Ok(())
}

fn verify_bounds(
    label: &str,
    a: &SpdMatrix,
    bounds: &SpectralBounds,
    tol: &TolerancePolicy,
) -> Result<()> {
    verify_interval(label, a, bounds.m(), bounds.upper(), tol)
}

fn resolve_map(params: &VerifierParams, n: usize) -> Result<PositiveUnitalMap> {
    let map = match &params.map {
        Some(map) => map.clone(),
        None => PositiveUnitalMap::identity(n)?,
    };
    if map.input_dim() != n {
        return Err(Error::DimensionMismatch {
            left: format!("map input {0}x{0}", map.input_dim()),
            right: format!("operand {0}x{0}", n),
        });
    }
    if !map.verify_unital() {
        return Err(Error::HypothesisViolated(format!("map {map} is not unital")));
    }
    Ok(map)
}

/// sigma and tau for the arbitrary-mean ids. Their weights must agree: a
/// weighted mean of A, B is only "between harmonic and arithmetic" with
/// every other mean of the SAME weight (nu = 1 arithmetic against nu = 0
/// harmonic breaks all four statements).
fn resolve_sigma_tau(params: &VerifierParams) -> Result<(MeanDescriptor, MeanDescriptor)> {
    let sigma = match &params.sigma {
        Some(d) => d.clone(),
        None => MeanDescriptor::new(MeanKind::Arithmetic, params.nu)?,
    };
    let tau = match &params.tau {
        Some(d) => d.clone(),
        None => MeanDescriptor::new(MeanKind::Geometric, params.nu)?,
    };
    if sigma.nu() != tau.nu() {
        return Err(Error::HypothesisViolated(format!(
            "sigma and tau must carry one shared weight, got nu = {} and nu = {}",
            sigma.nu(),
            tau.nu()
        )));
    }
    Ok((sigma, tau))
}

fn require_positive_p(params: &VerifierParams) -> Result<f64> {
    let p = params.p;
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::HypothesisViolated(format!("p must be positive, got {p}")));
    }
    Ok(p)
}

fn require_p_in(params: &VerifierParams, lo_open: f64, hi: f64, label: &str) -> Result<f64> {
    let p = require_positive_p(params)?;
    if p <= lo_open || p > hi {
        return Err(Error::HypothesisViolated(format!("p must lie in {label}, got {p}")));
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// evaluation plumbing

fn phi(map: &PositiveUnitalMap, x: &SpdMatrix) -> Result<SpdMatrix> {
    SpdMatrix::new(map.apply(x.sym())?)
}

fn phi_pow(map: &PositiveUnitalMap, x: &SpdMatrix, p: f64) -> Result<SpdMatrix> {
    phi(map, x)?.power(p)
}

/// A nabla_nu B + 2 r M m (A^{-1} nabla B^{-1} - A^{-1} sharp B^{-1}).
fn refined_argument(
    a: &SpdMatrix,
    b: &SpdMatrix,
    nu: f64,
    bounds: &SpectralBounds,
) -> Result<SpdMatrix> {
    let nabla = arithmetic_mean(a, b, nu)?;
    let term = refinement_term(a, b, nu, bounds)?;
    SpdMatrix::new(nabla.sym().add(&term))
}

/// A^{-1} nabla B^{-1} - A^{-1} sharp B^{-1} (unweighted means, PSD).
fn inverse_mean_gap(a: &SpdMatrix, b: &SpdMatrix) -> Result<SymMatrix> {
    let (ia, ib) = (a.inverse()?, b.inverse()?);
    let nabla = arithmetic_mean(&ia, &ib, 0.5)?;
    let sharp = geometric_mean(&ia, &ib, 0.5)?;
    Ok(nabla.sym().sub(sharp.sym()))
}

fn mat_value(x: &SymMatrix) -> Value {
    json!({ "n": x.n(), "data": x.to_rows() })
}

fn finish_params(mut value: Value, params: &VerifierParams) -> Value {
    if params.alpha_scale != 1.0 {
        value["alpha_scale"] = json!(params.alpha_scale);
    }
    value
}

fn operator_report(
    id: InequalityId,
    params: &VerifierParams,
    echo: Value,
    alpha: Option<f64>,
    lhs: &SymMatrix,
    rhs: &SymMatrix,
) -> Result<InequalityReport> {
    let order = loewner_leq(lhs, rhs, &params.tol)?;
    Ok(InequalityReport {
        id,
        holds: order.holds,
        gap: order.gap,
        alpha,
        params: finish_params(echo, params),
        lhs: mat_value(lhs),
        rhs: mat_value(rhs),
        tolerance: order.tolerance,
    })
}

fn scalar_report(
    id: InequalityId,
    params: &VerifierParams,
    echo: Value,
    alpha: Option<f64>,
    lhs: f64,
    rhs: f64,
    tolerance: f64,
) -> InequalityReport {
    let gap = rhs - lhs;
    InequalityReport {
        id,
        holds: gap >= -tolerance,
        gap,
        alpha,
        params: finish_params(echo, params),
        lhs: json!(lhs),
        rhs: json!(rhs),
        tolerance,
    }
}

// ---------------------------------------------------------------------------
// section 1: AM-GM and its reverses

fn amgm(id: InequalityId, params: &VerifierParams, input: &CheckInput) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let lhs = geometric_mean(a, b, 0.5)?;
    let rhs = arithmetic_mean(a, b, 0.5)?;
    operator_report(id, params, json!({}), None, lhs.sym(), rhs.sym())
}

enum LinForm {
    Plain,
    Squared,
    SquaredMaps,
    PowerLow,
    PowerLowMaps,
    PowerHigh,
    PowerHighMaps,
}

/// The (1.1)/(1.3)-(1.8) family: Phi^p((A+B)/2) against the Kantorovich
/// ratio for p <= 2 and the 4^{2/p} constant for p > 2, with either
/// Phi^p(A sharp B) or (Phi(A) sharp Phi(B))^p on the right.
fn lin_family(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
    form: LinForm,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;

    let (m, upper) = (bounds.m(), bounds.upper());
    let square = (upper + m) * (upper + m);
    let (p, base, maps_rhs) = match form {
        LinForm::Plain => (1.0, bounds.kantorovich_ratio(), false),
        LinForm::Squared => (2.0, bounds.kantorovich_ratio(), false),
        LinForm::SquaredMaps => (2.0, bounds.kantorovich_ratio(), true),
        LinForm::PowerLow => (
            require_p_in(params, 0.0, 2.0, "(0, 2]")?,
            bounds.kantorovich_ratio(),
            false,
        ),
        LinForm::PowerLowMaps => (
            require_p_in(params, 0.0, 2.0, "(0, 2]")?,
            bounds.kantorovich_ratio(),
            true,
        ),
        LinForm::PowerHigh => {
            let p = require_positive_p(params)?;
            if p <= 2.0 {
                return Err(Error::HypothesisViolated(format!(
                    "p must exceed 2, got {p}"
                )));
            }
            (p, square / (4f64.powf(2.0 / p) * upper * m), false)
        }
        LinForm::PowerHighMaps => {
            let p = require_positive_p(params)?;
            if p <= 2.0 {
                return Err(Error::HypothesisViolated(format!(
                    "p must exceed 2, got {p}"
                )));
            }
            (p, square / (4f64.powf(2.0 / p) * upper * m), true)
        }
    };
    let constant = base * params.alpha_scale;

    let lhs = phi_pow(&map, &arithmetic_mean(a, b, 0.5)?, p)?;
    let rhs_core = if maps_rhs {
        geometric_mean(&phi(&map, a)?, &phi(&map, b)?, 0.5)?.power(p)?
    } else {
        phi_pow(&map, &geometric_mean(a, b, 0.5)?, p)?
    };
    let rhs = rhs_core.scale(constant.powf(p))?;

    let echo = json!({
        "m": m, "M": upper, "p": p, "map": map.to_string(),
    });
    operator_report(id, params, echo, Some(constant), lhs.sym(), rhs.sym())
}

/// (1.9)/(1.10): Phi^p(A sigma B) <= alpha^p * RHS for arbitrary means
/// sigma, tau of one weight between harmonic and arithmetic.
fn hoa_fu(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
    maps_rhs: bool,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let (sigma, tau) = resolve_sigma_tau(params)?;
    let p = require_positive_p(params)?;
    let alpha = alpha_with(&bounds, p, params.alpha_variant)? * params.alpha_scale;

    let lhs = phi_pow(&map, &sigma.evaluate(a, b)?, p)?;
    let rhs_core = if maps_rhs {
        tau.evaluate(&phi(&map, a)?, &phi(&map, b)?)?.power(p)?
    } else {
        phi_pow(&map, &tau.evaluate(a, b)?, p)?
    };
    let rhs = rhs_core.scale(alpha.powf(p))?;

    let echo = json!({
        "m": bounds.m(), "M": bounds.upper(), "p": p,
        "sigma": sigma.to_string(), "tau": tau.to_string(),
        "map": map.to_string(), "alpha_variant": params.alpha_variant.to_string(),
    });
    operator_report(id, params, echo, Some(alpha), lhs.sym(), rhs.sym())
}

/// (1.11): Phi(A)^{-1} <= Phi(A^{-1}).
fn choi(id: InequalityId, params: &VerifierParams, input: &CheckInput) -> Result<InequalityReport> {
    let a = require_single(id, input)?;
    let map = resolve_map(params, a.n())?;
    let lhs = phi(&map, a)?.inverse()?;
    let rhs = phi(&map, &a.inverse()?)?;
    let echo = json!({ "map": map.to_string() });
    operator_report(id, params, echo, None, lhs.sym(), rhs.sym())
}

// ---------------------------------------------------------------------------
// section 2: lemmas

/// ||AB|| <= ||A + B||^2 / 4.
fn lemma_2_1(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let lhs = spectral_norm(&a.as_matrix().matmul(b.as_matrix()));
    let sum_norm = a.sym().add(b.sym()).operator_norm();
    let rhs = 0.25 * sum_norm * sum_norm;
    let tol = params.tol.at_scale(&[lhs, rhs]);
    Ok(scalar_report(id, params, json!({}), None, lhs, rhs, tol))
}

/// ||A^p + B^p|| <= ||(A + B)^p|| for p > 1.
fn lemma_2_2(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let p = require_positive_p(params)?;
    if p <= 1.0 {
        return Err(Error::HypothesisViolated(format!("p must exceed 1, got {p}")));
    }
    let lhs = a.power(p)?.sym().add(b.power(p)?.sym()).operator_norm();
    let rhs = SpdMatrix::new(a.sym().add(b.sym()))?.power(p)?.operator_norm();
    let tol = params.tol.at_scale(&[lhs, rhs]);
    Ok(scalar_report(id, params, json!({ "p": p }), None, lhs, rhs, tol))
}

/// Both sides of the Lemma 2.3 equivalence, evaluated independently.
#[derive(Debug, Clone, Copy)]
pub struct EquivalenceCheck {
    /// lambda_min(alpha B - A) and whether the order predicate holds.
    pub order_gap: f64,
    pub order_holds: bool,
    /// sqrt(alpha) - ||A^{1/2} B^{-1/2}|| and whether the norm predicate holds.
    pub norm_slack: f64,
    pub norm_holds: bool,
    /// Agreement of the two predicates, lenient when either sits on its
    /// boundary (where roundoff legitimately flips a verdict).
    pub agree: bool,
    /// min(|order_gap|, |norm_slack|), negated when the sides disagree.
    pub margin: f64,
}

/// Evaluates `A <= alpha B` and `||A^{1/2} B^{-1/2}|| <= sqrt(alpha)`
/// independently and compares the verdicts.
pub fn norm_order_equivalence(
    a: &SpdMatrix,
    b: &SpdMatrix,
    alpha: f64,
    tol: &TolerancePolicy,
) -> Result<EquivalenceCheck> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "equivalence constant must be positive, got {alpha}"
        )));
    }
    let order = loewner_leq(a.sym(), b.scale(alpha)?.sym(), tol)?;

    let product = a.sqrt()?.as_matrix().matmul(b.power(-0.5)?.as_matrix());
    let norm = spectral_norm(&product);
    let threshold = alpha.sqrt();
    let norm_tol = tol.rel() * 1.0f64.max(norm).max(threshold);
    let norm_slack = threshold - norm;
    let norm_holds = norm_slack >= -norm_tol;

    let boundary = order.gap.abs() <= order.tolerance || norm_slack.abs() <= norm_tol;
    let agree = order.holds == norm_holds || boundary;
    let margin = order.gap.abs().min(norm_slack.abs());
    Ok(EquivalenceCheck {
        order_gap: order.gap,
        order_holds: order.holds,
        norm_slack,
        norm_holds,
        agree,
        margin: if agree { margin } else { -margin },
    })
}

/// A <= alpha B iff ||A^{1/2} B^{-1/2}|| <= sqrt(alpha), with alpha taken
/// from the catalog constant for the given bounds and p.
fn lemma_2_3(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    let p = require_positive_p(params)?;
    let alpha = alpha_with(&bounds, p, params.alpha_variant)? * params.alpha_scale;
    let eq = norm_order_equivalence(a, b, alpha, &params.tol)?;
    let echo = json!({
        "m": bounds.m(), "M": bounds.upper(), "p": p,
        "alpha_variant": params.alpha_variant.to_string(),
        "order_holds": eq.order_holds, "norm_holds": eq.norm_holds,
    });
    Ok(InequalityReport {
        id,
        holds: eq.agree,
        gap: eq.margin,
        alpha: Some(alpha),
        params: finish_params(echo, params),
        lhs: json!(alpha.sqrt() - eq.norm_slack),
        rhs: json!(alpha.sqrt()),
        tolerance: params.tol.rel() * 1.0f64.max(alpha.sqrt()),
    })
}

/// Phi(A sigma B) + M m Phi(A tau B)^{-1} <= (M + m) I.
fn lemma_2_4(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let (sigma, tau) = resolve_sigma_tau(params)?;
    let (m, upper) = (bounds.m(), bounds.upper());

    let first = phi(&map, &sigma.evaluate(a, b)?)?;
    let second = phi(&map, &tau.evaluate(a, b)?)?.inverse()?;
    let lhs = first.sym().add(&second.sym().scale(upper * m));
    let rhs = SymMatrix::identity(map.output_dim()).scale((upper + m) * params.alpha_scale);

    let echo = json!({
        "m": m, "M": upper,
        "sigma": sigma.to_string(), "tau": tau.to_string(), "map": map.to_string(),
    });
    operator_report(id, params, echo, None, &lhs, &rhs)
}

/// Phi^p(A sigma B) Phi^{-p}(A tau B) + its transpose <= 2 alpha(2p)^p I.
///
/// The constant comes from the doubled exponent: applying (1.9) at 2p and
/// splitting the square root gives ||Phi^p(.) Phi^{-p}(.)|| <= alpha(2p)^p,
/// which is exactly the printed max{.., (M+m)^2 / (4^{1/p} M m)}.
fn prop_2_5(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let (sigma, tau) = resolve_sigma_tau(params)?;
    let p = require_positive_p(params)?;
    let alpha = alpha_with(&bounds, 2.0 * p, params.alpha_variant)? * params.alpha_scale;

    let left = phi_pow(&map, &sigma.evaluate(a, b)?, p)?;
    let right = phi_pow(&map, &tau.evaluate(a, b)?, -p)?;
    let product = left.as_matrix().matmul(right.as_matrix());
    let lhs = SymMatrix::from_matrix(&product.add(&product.transpose()))?;
    let rhs = SymMatrix::identity(map.output_dim()).scale(2.0 * alpha.powf(p));

    let echo = json!({
        "m": bounds.m(), "M": bounds.upper(), "p": p,
        "sigma": sigma.to_string(), "tau": tau.to_string(),
        "map": map.to_string(), "alpha_variant": params.alpha_variant.to_string(),
    });
    operator_report(id, params, echo, Some(alpha), &lhs, &rhs)
}

/// (2.1): a^{1-nu} b^nu + r (sqrt a - sqrt b)^2 <= (1 - nu) a + nu b.
/// An identity at nu = 1/2, so that case gets an absolute tolerance.
fn scalar_km(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    if a.n() != 1 {
        return Err(Error::InputShape {
            id: id.name(),
            expected: "1x1 matrices (the statement is scalar)",
        });
    }
    validate_weight(params.nu)?;
    let nu = params.nu;
    let r = nu.min(1.0 - nu);
    let (av, bv) = (a.sym().get(0, 0), b.sym().get(0, 0));

    let lhs = av.powf(1.0 - nu) * bv.powf(nu) + r * (av.sqrt() - bv.sqrt()).powi(2);
    let rhs = (1.0 - nu) * av + nu * bv;
    let tol = if (nu - 0.5).abs() < 1e-15 {
        1e-12
    } else {
        params.tol.at_scale(&[av, bv])
    };
    Ok(scalar_report(id, params, json!({ "nu": nu }), None, lhs, rhs, tol))
}

// ---------------------------------------------------------------------------
// section 2: the main theorem and its satellites

/// (2.2)/(2.3): Phi^p(refined argument) <= alpha^p * RHS.
fn thm_2_7(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
    maps_rhs: bool,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    validate_weight(params.nu)?;
    let nu = params.nu;
    let p = require_positive_p(params)?;
    let alpha = alpha_with(&bounds, p, params.alpha_variant)? * params.alpha_scale;

    let lhs = phi_pow(&map, &refined_argument(a, b, nu, &bounds)?, p)?;
    let rhs_core = if maps_rhs {
        geometric_mean(&phi(&map, a)?, &phi(&map, b)?, nu)?.power(p)?
    } else {
        phi_pow(&map, &geometric_mean(a, b, nu)?, p)?
    };
    let rhs = rhs_core.scale(alpha.powf(p))?;

    let echo = json!({
        "m": bounds.m(), "M": bounds.upper(), "nu": nu, "p": p,
        "map": map.to_string(), "alpha_variant": params.alpha_variant.to_string(),
    });
    operator_report(id, params, echo, Some(alpha), lhs.sym(), rhs.sym())
}

/// (2.4): Phi(A nabla_nu B) + M m Phi((1-nu) A^{-1} + nu B^{-1}) <= (M+m) I.
fn eq_2_4(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    validate_weight(params.nu)?;
    let nu = params.nu;
    let (m, upper) = (bounds.m(), bounds.upper());

    let first = phi(&map, &arithmetic_mean(a, b, nu)?)?;
    let second = phi(&map, &arithmetic_mean(&a.inverse()?, &b.inverse()?, nu)?)?;
    let lhs = first.sym().add(&second.sym().scale(upper * m));
    let rhs = SymMatrix::identity(map.output_dim()).scale((upper + m) * params.alpha_scale);

    let echo = json!({ "m": m, "M": upper, "nu": nu, "map": map.to_string() });
    operator_report(id, params, echo, None, &lhs, &rhs)
}

/// (2.5): A^{-1} sharp_nu B^{-1} + 2r(A^{-1} nabla B^{-1} - A^{-1} sharp B^{-1})
///        <= (1-nu) A^{-1} + nu B^{-1}. No bounds involved.
fn eq_2_5(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    validate_weight(params.nu)?;
    let nu = params.nu;
    let r = nu.min(1.0 - nu);

    let (ia, ib) = (a.inverse()?, b.inverse()?);
    let lhs = geometric_mean(&ia, &ib, nu)?
        .sym()
        .add(&inverse_mean_gap(a, b)?.scale(2.0 * r));
    let rhs = arithmetic_mean(&ia, &ib, nu)?;
    operator_report(id, params, json!({ "nu": nu }), None, &lhs, rhs.sym())
}

/// (2.6): || Phi(refined argument) Phi(A sharp_nu B)^{-1} || <= (M+m)^2/(4Mm).
fn eq_2_6(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    validate_weight(params.nu)?;
    let nu = params.nu;
    let constant = bounds.kantorovich_ratio() * params.alpha_scale;

    let left = phi(&map, &refined_argument(a, b, nu, &bounds)?)?;
    let right = phi(&map, &geometric_mean(a, b, nu)?)?.inverse()?;
    let lhs = spectral_norm(&left.as_matrix().matmul(right.as_matrix()));
    let tol = params.tol.at_scale(&[lhs, constant]);

    let echo = json!({
        "m": bounds.m(), "M": bounds.upper(), "nu": nu, "map": map.to_string(),
    });
    Ok(scalar_report(id, params, echo, Some(constant), lhs, constant, tol))
}

/// (2.7): Phi^p(A nabla_nu B) <= Phi^p(refined argument) for 0 < p <= 1.
fn remark_2_8_a(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    validate_weight(params.nu)?;
    let nu = params.nu;
    let p = require_p_in(params, 0.0, 1.0, "(0, 1]")?;

    let lhs = phi_pow(&map, &arithmetic_mean(a, b, nu)?, p)?;
    let rhs = phi_pow(&map, &refined_argument(a, b, nu, &bounds)?, p)?;
    let echo = json!({
        "m": bounds.m(), "M": bounds.upper(), "nu": nu, "p": p, "map": map.to_string(),
    });
    operator_report(id, params, echo, None, lhs.sym(), rhs.sym())
}

/// The p >= 1 norm chain: ||Phi^p(nabla)|| <= ||Phi^p(nabla) +
/// (2rMm)^p Phi(D)^p|| <= ||Phi^p(nabla + 2rMm D)||, D the inverse-mean gap.
fn remark_2_8_b(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    validate_weight(params.nu)?;
    let nu = params.nu;
    let p = require_positive_p(params)?;
    if p < 1.0 {
        return Err(Error::HypothesisViolated(format!(
            "p must be at least 1, got {p}"
        )));
    }
    let r = nu.min(1.0 - nu);
    let (m, upper) = (bounds.m(), bounds.upper());

    let first = phi_pow(&map, &arithmetic_mean(a, b, nu)?, p)?;
    let gap_image = map.apply(&inverse_mean_gap(a, b)?)?;
    let coefficient = (2.0 * r * upper * m).powf(p);
    let middle = first
        .sym()
        .add(&psd_power(&gap_image, p)?.scale(coefficient));
    let last = phi_pow(&map, &refined_argument(a, b, nu, &bounds)?, p)?;

    let n1 = first.operator_norm();
    let n2 = middle.operator_norm();
    let n3 = last.operator_norm();
    let tol = params.tol.at_scale(&[n1, n2, n3]);
    let gap = (n2 - n1).min(n3 - n2);

    let echo = json!({
        "m": m, "M": upper, "nu": nu, "p": p, "map": map.to_string(),
        "chain": [n1, n2, n3],
    });
    Ok(InequalityReport {
        id,
        holds: gap >= -tol,
        gap,
        alpha: None,
        params: finish_params(echo, params),
        lhs: json!(n1),
        rhs: json!(n3),
        tolerance: tol,
    })
}

/// A + M m A^{-1} <= (M + m) I.
fn basic_bound(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let a = require_single(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    let (m, upper) = (bounds.m(), bounds.upper());
    let lhs = a.sym().add(&a.inverse()?.sym().scale(upper * m));
    let rhs = SymMatrix::identity(a.n()).scale((upper + m) * params.alpha_scale);
    let echo = json!({ "m": m, "M": upper });
    operator_report(id, params, echo, None, &lhs, &rhs)
}

/// Both Corollary 2.11 displays (nu = 1/2), reported as one verdict with
/// the smaller of the two gaps.
fn cor_2_11(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let p = require_positive_p(params)?;
    let alpha = alpha_with(&bounds, p, params.alpha_variant)? * params.alpha_scale;

    let lhs = phi_pow(&map, &refined_argument(a, b, 0.5, &bounds)?, p)?;
    let factor = alpha.powf(p);
    let rhs_first = phi_pow(&map, &geometric_mean(a, b, 0.5)?, p)?.scale(factor)?;
    let rhs_second = geometric_mean(&phi(&map, a)?, &phi(&map, b)?, 0.5)?
        .power(p)?
        .scale(factor)?;

    let first = loewner_leq(lhs.sym(), rhs_first.sym(), &params.tol)?;
    let second = loewner_leq(lhs.sym(), rhs_second.sym(), &params.tol)?;
    let (gap, tolerance) = if first.gap <= second.gap {
        (first.gap, first.tolerance)
    } else {
        (second.gap, second.tolerance)
    };
    let echo = json!({
        "m": bounds.m(), "M": bounds.upper(), "p": p,
        "map": map.to_string(), "alpha_variant": params.alpha_variant.to_string(),
        "gap_first": first.gap, "gap_second": second.gap,
    });
    Ok(InequalityReport {
        id,
        holds: first.holds && second.holds,
        gap,
        alpha: Some(alpha),
        params: finish_params(echo, params),
        lhs: mat_value(lhs.sym()),
        rhs: mat_value(rhs_first.sym()),
        tolerance,
    })
}

/// Corollary 2.12: the Phi = identity specialization.
fn cor_2_12(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    verify_bounds("b", b, &bounds, &params.tol)?;
    let p = require_positive_p(params)?;
    let alpha = alpha_with(&bounds, p, params.alpha_variant)? * params.alpha_scale;

    let lhs = refined_argument(a, b, 0.5, &bounds)?.power(p)?;
    let rhs = geometric_mean(a, b, 0.5)?.power(p)?.scale(alpha.powf(p))?;
    let echo = json!({
        "m": bounds.m(), "M": bounds.upper(), "p": p,
        "alpha_variant": params.alpha_variant.to_string(),
    });
    operator_report(id, params, echo, Some(alpha), lhs.sym(), rhs.sym())
}

// ---------------------------------------------------------------------------
// Polya–Szego family

fn verify_ps_pair(
    a: &SpdMatrix,
    b: &SpdMatrix,
    ps: &PolyaSzegoBounds,
    tol: &TolerancePolicy,
) -> Result<()> {
    let (lo1, hi1) = ps.first_interval();
    let (lo2, hi2) = ps.second_interval();
    verify_interval("a", a, lo1, hi1, tol)?;
    verify_interval("b", b, lo2, hi2, tol)
}

fn ps_echo(ps: &PolyaSzegoBounds, map: &PositiveUnitalMap) -> Value {
    json!({
        "m1": ps.m1(), "M1": ps.upper1(), "m2": ps.m2(), "M2": ps.upper2(),
        "m": ps.ratio_m(), "M": ps.ratio_upper(), "map": map.to_string(),
    })
}

/// (2.8): Phi(A) sharp Phi(B) <= (M+m)/(2 sqrt(mM)) Phi(A sharp B).
fn polya_szego(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let ps = require_ps(params)?;
    verify_ps_pair(a, b, &ps, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let constant = ps.reverse_ratio() * params.alpha_scale;

    let lhs = geometric_mean(&phi(&map, a)?, &phi(&map, b)?, 0.5)?;
    let rhs = phi(&map, &geometric_mean(a, b, 0.5)?)?.scale(constant)?;
    operator_report(
        id,
        params,
        ps_echo(&ps, &map),
        Some(constant),
        lhs.sym(),
        rhs.sym(),
    )
}

/// (2.9) under plain bounds 0 < m <= A <= M:
/// Phi(A) sharp Phi(A^{-1}) <= (M+m)/(2 sqrt(Mm)) I.
fn kantorovich(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let a = require_single(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let (m, upper) = (bounds.m(), bounds.upper());
    let constant = (upper + m) / (2.0 * (upper * m).sqrt()) * params.alpha_scale;

    let lhs = geometric_mean(&phi(&map, a)?, &phi(&map, &a.inverse()?)?, 0.5)?;
    let rhs = SymMatrix::identity(map.output_dim()).scale(constant);
    let echo = json!({ "m": m, "M": upper, "map": map.to_string() });
    operator_report(id, params, echo, Some(constant), lhs.sym(), &rhs)
}

/// (2.10): the bracket-refined Polya–Szego inequality.
fn thm_2_13_a(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let ps = require_ps(params)?;
    verify_ps_pair(a, b, &ps, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let s = (ps.ratio_upper() * ps.ratio_m()).sqrt();
    let constant = ps.reverse_ratio() * params.alpha_scale;

    let pa = phi(&map, a)?;
    let pb = phi(&map, b)?;
    let g = geometric_mean(&pa, &pb, 0.5)?;
    let bracket = pa
        .sym()
        .scale(s)
        .add(&pb.sym().scale(1.0 / s))
        .sub(&g.sym().scale(2.0));
    let lhs = g.sym().add(&bracket.scale(0.5));
    let rhs = phi(&map, &geometric_mean(a, b, 0.5)?)?.scale(constant)?;
    operator_report(id, params, ps_echo(&ps, &map), Some(constant), &lhs, rhs.sym())
}

/// The B = A^{-1} display of Theorem 2.13 under plain bounds
/// 0 < m <= A <= M. The bracket carries Phi(A)/sqrt(Mm) and
/// sqrt(Mm) Phi(A^{-1}): those are the weights for which the bracket's
/// geometric mean is exactly Phi(A) sharp Phi(A^{-1}), making the sum
/// collapse to (Phi(A)/sqrt(Mm) + sqrt(Mm) Phi(A^{-1}))/2, which the
/// basic bound caps at (M+m)/(2 sqrt(Mm)). Equality at A = mI and A = MI.
fn thm_2_13_b(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let a = require_single(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let (m, upper) = (bounds.m(), bounds.upper());
    let s = (upper * m).sqrt();
    let constant = (upper + m) / (2.0 * s) * params.alpha_scale;

    let pa = phi(&map, a)?;
    let pinv = phi(&map, &a.inverse()?)?;
    let g = geometric_mean(&pa, &pinv, 0.5)?;
    let bracket = pa
        .sym()
        .scale(1.0 / s)
        .add(&pinv.sym().scale(s))
        .sub(&g.sym().scale(2.0));
    let lhs = g.sym().add(&bracket.scale(0.5));
    let rhs = SymMatrix::identity(map.output_dim()).scale(constant);
    let echo = json!({ "m": m, "M": upper, "map": map.to_string() });
    operator_report(id, params, echo, Some(constant), &lhs, &rhs)
}

/// (2.11): M m Phi(A) + Phi(B) <= (M + m) Phi(A sharp B).
fn eq_2_11(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let ps = require_ps(params)?;
    verify_ps_pair(a, b, &ps, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let (m, upper) = (ps.ratio_m(), ps.ratio_upper());
    let constant = (upper + m) * params.alpha_scale;

    let lhs = phi(&map, a)?
        .sym()
        .scale(upper * m)
        .add(phi(&map, b)?.sym());
    let rhs = phi(&map, &geometric_mean(a, b, 0.5)?)?.scale(constant)?;
    operator_report(id, params, ps_echo(&ps, &map), Some(constant), &lhs, rhs.sym())
}

/// (2.12): the scalar-Young rearrangement of (M m Phi(A), Phi(B)). Both
/// sides are algebraically equal, so the check documents a gap of ~0.
fn eq_2_12(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, b) = require_pair(id, input)?;
    let ps = require_ps(params)?;
    verify_ps_pair(a, b, &ps, &params.tol)?;
    let map = resolve_map(params, a.n())?;
    let (m, upper) = (ps.ratio_m(), ps.ratio_upper());
    let s = (upper * m).sqrt();

    let pa = phi(&map, a)?;
    let pb = phi(&map, b)?;
    let g = geometric_mean(&pa, &pb, 0.5)?.sym().scale(s);
    let half_sum = pa.sym().scale(upper * m).add(pb.sym()).scale(0.5);
    let lhs = g.add(&half_sum.scale(2.0).sub(&g.scale(2.0)).scale(0.5));
    operator_report(id, params, ps_echo(&ps, &map), None, &lhs, &half_sum)
}

/// Corollary 2.14: the n-tuple form of (2.10) via the block-average map.
fn cor_2_14(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a_list, b_list) = require_tuples(id, input)?;
    let ps = require_ps(params)?;
    let (lo1, hi1) = ps.first_interval();
    let (lo2, hi2) = ps.second_interval();
    for (j, a) in a_list.iter().enumerate() {
        verify_interval(&format!("a[{j}]"), a, lo1, hi1, &params.tol)?;
    }
    for (j, b) in b_list.iter().enumerate() {
        verify_interval(&format!("b[{j}]"), b, lo2, hi2, &params.tol)?;
    }
    let s = (ps.ratio_upper() * ps.ratio_m()).sqrt();
    let constant = ps.reverse_ratio() * params.alpha_scale;

    let sum = |list: &[SpdMatrix]| -> Result<SpdMatrix> {
        let mut acc = list[0].clone();
        for item in &list[1..] {
            acc = acc.add(item)?;
        }
        Ok(acc)
    };
    let sa = sum(a_list)?;
    let sb = sum(b_list)?;
    let g = geometric_mean(&sa, &sb, 0.5)?;
    let bracket = sa
        .sym()
        .scale(s)
        .add(&sb.sym().scale(1.0 / s))
        .sub(&g.sym().scale(2.0));
    let lhs = g.sym().add(&bracket.scale(0.5));

    let mut rhs_sum = SymMatrix::zeros(sa.n());
    for (a, b) in a_list.iter().zip(b_list.iter()) {
        rhs_sum = rhs_sum.add(geometric_mean(a, b, 0.5)?.sym());
    }
    let rhs = rhs_sum.scale(constant);

    let echo = json!({
        "m1": ps.m1(), "M1": ps.upper1(), "m2": ps.m2(), "M2": ps.upper2(),
        "m": ps.ratio_m(), "M": ps.ratio_upper(), "tuples": a_list.len(),
    });
    operator_report(id, params, echo, Some(constant), &lhs, &rhs)
}

/// Proposition 2.15 on unit vectors. The bracket weights are
/// <Ax,x>^{1/2}/(Mm)^{1/4} and (Mm)^{1/4} <A^{-1}x,x>^{1/2}: with those,
/// the left side collapses to (<Ax,x>/sqrt(Mm) + sqrt(Mm)<A^{-1}x,x>)/2,
/// which the basic bound caps at (M+m)/(2 sqrt(Mm)). Equality holds at
/// eigenvectors of both extreme eigenvalues.
fn prop_2_15(
    id: InequalityId,
    params: &VerifierParams,
    input: &CheckInput,
) -> Result<InequalityReport> {
    let (a, x) = require_vector(id, input)?;
    let bounds = require_bounds(params)?;
    verify_bounds("a", a, &bounds, &params.tol)?;
    let xx: f64 = x.iter().map(|v| v * v).sum();
    if (xx.sqrt() - 1.0).abs() > 1e-12 {
        return Err(Error::HypothesisViolated(format!(
            "x must be a unit vector, got ||x|| = {}",
            xx.sqrt()
        )));
    }
    let (m, upper) = (bounds.m(), bounds.upper());
    let quarter = (upper * m).powf(0.25);
    let constant = (upper + m) / (2.0 * (upper * m).sqrt()) * params.alpha_scale;

    let qa = a.sym().quadratic_form(x);
    let qh = a.inverse()?.sym().quadratic_form(x);
    let lhs = (qa * qh).sqrt() + 0.5 * (qa.sqrt() / quarter - quarter * qh.sqrt()).powi(2);
    let rhs = constant * xx * xx;
    let tol = params.tol.at_scale(&[lhs, rhs]);

    let echo = json!({ "m": m, "M": upper, "qa": qa, "qh": qh });
    Ok(scalar_report(id, params, echo, Some(constant), lhs, rhs, tol))
}
