//! One PASS/FAIL line per acceptance check; nonzero exit if any fails.
//! Runs without the libtest harness so the lines always print.

use std::process::ExitCode;
use std::time::Instant;

use gindex::registry::Strategies;
use gindex::sweep::{run_criteria, CheckResult};

fn main() -> ExitCode {
    let st = Strategies::default();
    let start = Instant::now();
    let mut results: Vec<CheckResult> = run_criteria(&st);
    let total = start.elapsed();
    let in_budget = total.as_secs_f64() < 60.0;
    results.push(CheckResult {
        id: "10".into(),
        name: "full sweep under 60 s".into(),
        passed: results.iter().all(|r| r.passed) && in_budget,
        cases: 1,
        detail: format!("checks 1-9 in {:.2} s", total.as_secs_f64()),
        failures: if in_budget {
            Vec::new()
        } else {
            vec!["over budget".into()]
        },
        elapsed_ms: total.as_millis(),
    });
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.id.as_str())
        .collect();
    if failed.is_empty() {
        println!("acceptance: {} of {} passed", results.len(), results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
