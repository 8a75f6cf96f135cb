//! One line per acceptance criterion, each a theorem suite at its full bound.

use nflab::classlab::{run_theorem_suite, SUITES};
use std::io::Write;
use std::time::Instant;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (i, &(suite, bound)) in SUITES.iter().enumerate() {
        let start = Instant::now();
        let line = match run_theorem_suite(suite, bound) {
            Ok(report) => {
                let verdict = if report.passed() { "PASS" } else { "FAIL" };
                if !report.passed() {
                    failed.push(suite);
                }
                format!(
                    "{verdict} checked={} failures={}",
                    report.checked,
                    report.failures.len()
                )
            }
            Err(e) => {
                failed.push(suite);
                format!("FAIL error={e}")
            }
        };
        // Not captured by the test harness.
        let mut out = std::io::stdout().lock();
        writeln!(out, "criterion {} ({suite}, bound {bound}): {line} in {:.2?}", i + 1, start.elapsed()).unwrap();
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
