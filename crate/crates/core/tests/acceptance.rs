//! Acceptance suite: runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion.
//!
//! Set `ACCEPTANCE_ONLY=3,7` to run a subset.

use guided::bench::certify::{run_criterion, CRITERIA};

fn selected() -> Vec<u8> {
    match std::env::var("ACCEPTANCE_ONLY") {
        Ok(list) if !list.trim().is_empty() => list
            .split(',')
            .map(|s| s.trim().parse().expect("ACCEPTANCE_ONLY holds comma-separated ids"))
            .collect(),
        _ => (1..=CRITERIA).collect(),
    }
}

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for id in selected() {
        let report = run_criterion(id).unwrap_or_else(|e| panic!("criterion {id} aborted: {e}"));
        println!("{report}");
        if !report.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
