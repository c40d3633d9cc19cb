//! Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
//! Failing checks are listed with their details below the summary line;
//! set `HGC_ACCEPTANCE_VERBOSE=1` to list every check.

use std::process::ExitCode;

use hgc_core::verify::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let verbose = std::env::var_os("HGC_ACCEPTANCE_VERBOSE").is_some();
    let mut failed = 0;
    for (id, title) in CRITERIA {
        match run_criterion(id) {
            Ok(report) => {
                let verdict = if report.passed() { "PASS" } else { "FAIL" };
                println!(
                    "criterion {id:>2} {verdict}: {title} ({} checks, {:.1}s)",
                    report.checks.len(),
                    report.seconds
                );
                for c in report.checks.iter().filter(|c| verbose || !c.passed) {
                    println!("    {}: {}", if c.passed { "ok" } else { "failed" }, c.name);
                    for line in &c.detail {
                        println!("        {line}");
                    }
                }
                if !report.passed() {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("criterion {id:>2} FAIL: {title} (error: {e})");
                failed += 1;
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
