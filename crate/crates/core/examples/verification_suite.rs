//! Randomized verification over the whole catalog, plus a deliberate
//! fault injection to show failures are actually caught.
//!
//! Run with: cargo run --example verification_suite

use opineq::inequalities::InequalityId;
use opineq::sampling::{run_suite, SampleConfig, SuiteReport};

fn print_table(report: &SuiteReport) {
    println!(
        "{:<16} {:>7} {:>7} {:>9} {:>14}",
        "id", "passed", "failed", "rejected", "worst gap"
    );
    for row in &report.ids {
        let worst = row
            .worst_gap
            .map_or("-".to_string(), |g| format!("{g:+.3e}"));
        println!(
            "{:<16} {:>7} {:>7} {:>9} {:>14}",
            row.id.name(),
            row.passed,
            row.failed,
            row.rejected,
            worst
        );
    }
}

fn main() -> opineq::Result<()> {
    // Defaults: dims 1..=6, three bound intervals, full nu and p grids,
    // seed 42. Trials are kept small here; the test suite runs 1000.
    let config = SampleConfig {
        trials: 50,
        ..SampleConfig::default()
    };
    let report = run_suite(&config, &InequalityId::ALL)?;
    print_table(&report);
    println!(
        "total: {} passed, {} failed (seed {})",
        report.total_passed(),
        report.total_failed(),
        report.seed
    );

    // Rejected trials are parameter draws outside an id's exponent
    // domain (e.g. the p <= 2 family rejects p = 3); they are counted,
    // never silently skipped.
    let rejected: usize = report.ids.iter().map(|o| o.rejected).sum();
    println!("rejected draws across the catalog: {rejected}");

    // Fault injection: shrinking every constant by half must break the
    // reversal family. A verifier that cannot fail verifies nothing.
    let broken = SampleConfig {
        trials: 50,
        alpha_scale: 0.5,
        ..SampleConfig::default()
    };
    let sabotaged = run_suite(&broken, &[InequalityId::Thm27A, InequalityId::Thm27B])?;
    println!(
        "with constants halved: {} failures out of {} evaluated trials",
        sabotaged.total_failed(),
        sabotaged.total_failed() + sabotaged.total_passed()
    );
    assert!(
        sabotaged.total_failed() > 0,
        "halved constants must be detected"
    );

    // Same seed, same report: the suite is fully deterministic.
    let again = run_suite(&config, &InequalityId::ALL)?;
    let identical = serde_json::to_string(&report)? == serde_json::to_string(&again)?;
    println!("rerun with the same seed is identical: {identical}");

    Ok(())
}
