//! The acceptance suite as a test target: runs every criterion through the
//! same verifier the `verify` subcommand uses and prints one line per
//! criterion.

use qthermo_cli::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all(2, 0);
    let mut failures = 0;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {:2}: {} -- {}", r.id, r.name, r.detail);
        if !r.passed {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}

/// The suite is itself deterministic: same seed, different worker counts,
/// identical reports.
#[test]
fn acceptance_report_is_worker_invariant() {
    let render = |workers| {
        run_all(workers, 7)
            .iter()
            .map(|r| format!("{}|{}|{}", r.id, r.passed, r.detail))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(render(1), render(4));
}
