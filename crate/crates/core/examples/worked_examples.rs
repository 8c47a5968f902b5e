//! The two built-in reference cases, replayed against their published
//! values.
//!
//! Run with: cargo run --example worked_examples

use opineq::worked::{run_case, WorkedCase};

fn print_case(case: &WorkedCase) {
    println!("case {}", case.case);
    for note in &case.notes {
        println!("  note: {note}");
    }
    for matrix in &case.matrices {
        println!("  {}:", matrix.label);
        for row in &matrix.data {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>10.4}")).collect();
            println!("    [{}]", cells.join(", "));
        }
    }
    for check in &case.checks {
        // Checks with asserted = false are informational: they document
        // observed values without gating the verdict.
        let tag = if !check.asserted {
            "info"
        } else if check.ok {
            " ok "
        } else {
            "FAIL"
        };
        println!(
            "  [{tag}] {}: observed {:.6} vs {:.6} (tol {:.1e})",
            check.label, check.observed, check.reference, check.tolerance
        );
    }
    println!("  verdict: {}\n", if case.ok { "ok" } else { "FAILED" });
}

fn main() -> opineq::Result<()> {
    for which in ["2.9", "2.10"] {
        let case = run_case(which)?;
        print_case(&case);
        assert!(case.ok, "reference case {which} must replay cleanly");
    }
    Ok(())
}
