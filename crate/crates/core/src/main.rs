//! Thin command-line front door over the library. Exit codes: 0 all
//! checks hold, 1 a verified-hypothesis inequality failed or a reference
//! value mismatched, 2 input/usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use opineq::inequalities::{
    alpha_with, check, AlphaVariant, CheckInput, InequalityId, InequalityReport,
    PolyaSzegoBounds, VerifierParams,
};
use opineq::io::{read_check_file, CheckFile, MatrixDoc};
use opineq::linalg::{SpectralBounds, TolerancePolicy};
use opineq::means::{MeanDescriptor, MeanKind};
use opineq::sampling::{run_suite, SampleConfig, SuiteReport};
use opineq::worked::{run_case, WorkedCase};
use opineq::{Error, Result};

/// Environment variable holding the default relative tolerance; the
/// `--tol` flag wins over it.
const TOL_ENV: &str = "OPINEQ_TOL_REL";

#[derive(Parser)]
#[command(
    name = "opineq",
    version,
    about = "Weighted operator means, positive unital maps, and a catalog of reverse AM-GM inequality verifiers"
)]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce a built-in reference case: 2.9 or 2.10.
    Example {
        /// Case name: "2.9" or "2.10".
        which: String,
    },
    /// Run the randomized verification suite over the catalog.
    Verify(VerifyArgs),
    /// Check one inequality on matrices supplied in a JSON file.
    Check(CheckArgs),
    /// Evaluate the reverse-inequality constant alpha(m, M, p).
    Alpha(AlphaArgs),
    /// Evaluate a weighted operator mean of two matrices from a file.
    Means(MeansArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated inequality ids, or ALL.
    #[arg(long, value_delimiter = ',', default_value = "ALL")]
    ids: Vec<String>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Matrix dimensions to sample.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6")]
    dims: Vec<usize>,
    /// Lower spectral bounds; paired positionally with --M.
    #[arg(long = "m", value_delimiter = ',', default_value = "1,3,0.5", allow_hyphen_values = true)]
    lower: Vec<f64>,
    /// Upper spectral bounds; paired positionally with --m.
    #[arg(long = "M", value_delimiter = ',', default_value = "3,7,50", allow_hyphen_values = true)]
    upper: Vec<f64>,
    /// Mean weights to sweep.
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    nu: Vec<f64>,
    /// Power exponents to sweep.
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,3,5")]
    p: Vec<f64>,
    /// Relative tolerance (overrides OPINEQ_TOL_REL).
    #[arg(long)]
    tol: Option<f64>,
    /// Constant family: body (4^(2/p)) or abstract (4^p).
    #[arg(long, default_value = "body")]
    alpha_variant: String,
    /// Multiplier on every derived constant (1 = honest verification).
    #[arg(long, default_value_t = 1.0)]
    alpha_scale: f64,
}

#[derive(Args)]
struct CheckArgs {
    /// JSON file with any of: a, b, x, a_list, b_list, map.
    #[arg(long)]
    file: PathBuf,
    /// Inequality id, e.g. THM_2_7_A.
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = 0.5)]
    nu: f64,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Lower spectral bound for plain-bounds hypotheses.
    #[arg(long = "m", allow_hyphen_values = true)]
    lower: Option<f64>,
    /// Upper spectral bound for plain-bounds hypotheses.
    #[arg(long = "M", allow_hyphen_values = true)]
    upper: Option<f64>,
    /// First-operand interval [m1^2, M1^2] for the two-interval family.
    #[arg(long)]
    m1: Option<f64>,
    #[arg(long = "M1")]
    upper1: Option<f64>,
    /// Second-operand interval [m2^2, M2^2] for the two-interval family.
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long = "M2")]
    upper2: Option<f64>,
    /// First mean: arithmetic | geometric | harmonic | power:<t>.
    #[arg(long)]
    sigma: Option<String>,
    /// Second mean: arithmetic | geometric | harmonic | power:<t>.
    #[arg(long)]
    tau: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value = "body")]
    alpha_variant: String,
    #[arg(long, default_value_t = 1.0)]
    alpha_scale: f64,
}

#[derive(Args)]
struct AlphaArgs {
    #[arg(long = "m")]
    lower: f64,
    #[arg(long = "M")]
    upper: f64,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value = "body")]
    alpha_variant: String,
}

#[derive(Args)]
struct MeansArgs {
    /// JSON file with matrices a and b.
    #[arg(long)]
    file: PathBuf,
    /// arithmetic | geometric | harmonic | power (with --t) | power:<t>.
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 0.5)]
    nu: f64,
    /// Exponent for the power mean.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Example { which } => cmd_example(&which, cli.json),
        Command::Verify(args) => cmd_verify(args, cli.json),
        Command::Check(args) => cmd_check(args, cli.json),
        Command::Alpha(args) => cmd_alpha(args, cli.json),
        Command::Means(args) => cmd_means(args, cli.json),
    }
}

/// --tol flag > OPINEQ_TOL_REL env > built-in default. The single place
/// tolerance configuration is resolved.
fn resolve_tol(flag: Option<f64>) -> Result<TolerancePolicy> {
    let rel = match flag {
        Some(value) => value,
        None => match std::env::var(TOL_ENV) {
            Ok(raw) => raw.parse().map_err(|_| {
                Error::InvalidConfig(format!("{TOL_ENV} must hold a number, got `{raw}`"))
            })?,
            Err(_) => return Ok(TolerancePolicy::default()),
        },
    };
    TolerancePolicy::new(rel)
}

fn parse_ids(raw: &[String]) -> Result<Vec<InequalityId>> {
    if raw.iter().any(|s| s == "ALL") {
        return Ok(InequalityId::ALL.to_vec());
    }
    raw.iter().map(|s| InequalityId::from_str(s)).collect()
}

fn parse_mean(kind: &str, nu: f64) -> Result<MeanDescriptor> {
    MeanDescriptor::new(MeanKind::from_str(kind)?, nu)
}

// ---------------------------------------------------------------------------
// example

fn cmd_example(which: &str, as_json: bool) -> Result<ExitCode> {
    let case = run_case(which)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&case)?);
    } else {
        print_case(&case);
    }
    Ok(if case.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_case(case: &WorkedCase) {
    println!("case {}", case.case);
    for note in &case.notes {
        println!("  note: {note}");
    }
    for matrix in &case.matrices {
        println!("  {}:", matrix.label);
        for row in &matrix.data {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
            println!("    [{}]", cells.join(", "));
        }
    }
    for check in &case.checks {
        let verdict = if !check.asserted {
            "INFO"
        } else if check.ok {
            "OK"
        } else {
            "FAIL"
        };
        println!(
            "  [{verdict:4}] {}: observed {:.6}, reference {:.6} (tolerance {:.1e})",
            check.label, check.observed, check.reference, check.tolerance
        );
    }
    println!("result: {}", if case.ok { "ok" } else { "FAILED" });
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(args: VerifyArgs, as_json: bool) -> Result<ExitCode> {
    let ids = parse_ids(&args.ids)?;
    if args.lower.len() != args.upper.len() || args.lower.is_empty() {
        return Err(Error::InvalidConfig(
            "--m and --M must list the same positive number of bounds".into(),
        ));
    }
    let mut bounds = Vec::with_capacity(args.lower.len());
    for (&m, &upper) in args.lower.iter().zip(args.upper.iter()) {
        bounds.push(SpectralBounds::new(m, upper)?);
    }
    let config = SampleConfig {
        dims: args.dims,
        bounds,
        nu_grid: args.nu,
        p_grid: args.p,
        trials: args.trials,
        seed: args.seed,
        alpha_variant: AlphaVariant::from_str(&args.alpha_variant)?,
        alpha_scale: args.alpha_scale,
        tol: resolve_tol(args.tol)?,
    };
    let report = run_suite(&config, &ids)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print_suite(&report);
    }
    Ok(if report.total_failed() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_suite(report: &SuiteReport) {
    println!(
        "suite: seed {}, {} trials per id",
        report.seed, report.trials
    );
    println!(
        "{:<16} {:>8} {:>8} {:>10} {:>14}",
        "id", "passed", "failed", "rejected", "worst gap"
    );
    for outcome in &report.ids {
        let gap = outcome
            .worst_gap
            .map_or_else(|| "-".to_string(), |g| format!("{g:.3e}"));
        println!(
            "{:<16} {:>8} {:>8} {:>10} {:>14}",
            outcome.id.to_string(),
            outcome.passed,
            outcome.failed,
            outcome.rejected,
            gap
        );
    }
    println!("total failures: {}", report.total_failed());
}

// ---------------------------------------------------------------------------
// check

fn cmd_check(args: CheckArgs, as_json: bool) -> Result<ExitCode> {
    let id = InequalityId::from_str(&args.id)?;
    let file = read_check_file(&args.file)?;

    let bounds = match (args.lower, args.upper) {
        (Some(m), Some(upper)) => Some(SpectralBounds::new(m, upper)?),
        (None, None) => None,
        _ => {
            return Err(Error::InvalidConfig(
                "--m and --M must be given together".into(),
            ))
        }
    };
    let ps = match (args.m1, args.upper1, args.m2, args.upper2) {
        (Some(m1), Some(u1), Some(m2), Some(u2)) => Some(PolyaSzegoBounds::new(m1, u1, m2, u2)?),
        (None, None, None, None) => bounds.as_ref().map(PolyaSzegoBounds::from_shared),
        _ => {
            return Err(Error::InvalidConfig(
                "--m1, --M1, --m2, --M2 must be given together".into(),
            ))
        }
    };

    let params = VerifierParams {
        nu: args.nu,
        p: args.p,
        bounds,
        ps,
        sigma: args.sigma.as_deref().map(|k| parse_mean(k, args.nu)).transpose()?,
        tau: args.tau.as_deref().map(|k| parse_mean(k, args.nu)).transpose()?,
        map: file.map.clone().map(|spec| spec.into_map()).transpose()?,
        alpha_variant: AlphaVariant::from_str(&args.alpha_variant)?,
        alpha_scale: args.alpha_scale,
        tol: resolve_tol(args.tol)?,
    };
    let input = build_input(file)?;
    let report = check(id, &params, &input)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print_report(&report);
    }
    Ok(if report.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Chooses the input shape from what the file actually contains; the
/// verifier still validates the shape against the id.
fn build_input(file: CheckFile) -> Result<CheckInput> {
    let into_spd = |doc: MatrixDoc| doc.into_spd();
    if file.a_list.is_some() || file.b_list.is_some() {
        let a_list = file
            .a_list
            .ok_or(Error::MissingParam("a_list"))?
            .into_iter()
            .map(into_spd)
            .collect::<Result<Vec<_>>>()?;
        let b_list = file
            .b_list
            .ok_or(Error::MissingParam("b_list"))?
            .into_iter()
            .map(into_spd)
            .collect::<Result<Vec<_>>>()?;
        return Ok(CheckInput::Tuples { a_list, b_list });
    }
    let a = file.a.ok_or(Error::MissingParam("a"))?.into_spd()?;
    if let Some(x) = file.x {
        return Ok(CheckInput::WithVector { a, x });
    }
    match file.b {
        Some(b) => Ok(CheckInput::Pair {
            a,
            b: b.into_spd()?,
        }),
        None => Ok(CheckInput::Single { a }),
    }
}

fn print_report(report: &InequalityReport) {
    println!("id: {}", report.id);
    println!("holds: {}", report.holds);
    println!("gap: {:.6e} (tolerance {:.3e})", report.gap, report.tolerance);
    if let Some(alpha) = report.alpha {
        println!("alpha: {alpha:.12}");
    }
    println!("params: {}", report.params);
    println!("lhs: {}", report.lhs);
    println!("rhs: {}", report.rhs);
}

// ---------------------------------------------------------------------------
// alpha / means

fn cmd_alpha(args: AlphaArgs, as_json: bool) -> Result<ExitCode> {
    let bounds = SpectralBounds::new(args.lower, args.upper)?;
    let variant = AlphaVariant::from_str(&args.alpha_variant)?;
    let alpha = alpha_with(&bounds, args.p, variant)?;
    if as_json {
        let value = json!({
            "alpha": alpha,
            "m": args.lower,
            "M": args.upper,
            "p": args.p,
            "variant": variant.to_string(),
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("alpha({}, {}, {}) = {:.12}", args.lower, args.upper, args.p, alpha);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_means(args: MeansArgs, as_json: bool) -> Result<ExitCode> {
    let file = read_check_file(&args.file)?;
    let a = file.a.ok_or(Error::MissingParam("a"))?.into_spd()?;
    let b = file.b.ok_or(Error::MissingParam("b"))?.into_spd()?;
    let kind = match (args.kind.as_str(), args.t) {
        ("power", Some(t)) => MeanKind::Power(t),
        (_, Some(_)) => {
            return Err(Error::InvalidConfig(
                "--t only applies to --kind power".into(),
            ))
        }
        (other, None) => MeanKind::from_str(other)?,
    };
    let mean = MeanDescriptor::new(kind, args.nu)?.evaluate(&a, &b)?;
    if as_json {
        let value = json!({
            "kind": kind.to_string(),
            "nu": args.nu,
            "mean": { "n": mean.n(), "data": mean.sym().to_rows() },
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("{} mean (nu = {}):", kind, args.nu);
        for row in mean.sym().to_rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
            println!("  [{}]", cells.join(", "));
        }
    }
    Ok(ExitCode::SUCCESS)
}
