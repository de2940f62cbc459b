//! One PASS/FAIL line per acceptance criterion. All comparisons are exact
//! integer or polynomial equalities; only the time budgets are tolerances.

use std::io::Write;

use quartic_twist::verify::{run_all, DEFAULT_SEED};

#[test]
fn acceptance() {
    let results = run_all(DEFAULT_SEED);
    assert_eq!(results.len(), 10);
    // Written to the raw handle so the lines survive libtest's capture.
    let mut err = std::io::stderr().lock();
    for r in &results {
        writeln!(
            err,
            "{} criterion {:>2} {:<20} {:>8.2?} (budget {}s) {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.elapsed,
            r.budget_secs,
            r.detail
        )
        .expect("stderr is writable");
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
