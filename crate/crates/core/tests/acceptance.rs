//! Acceptance suite: each criterion runs once under its time budget and
//! prints one PASS/FAIL line.

use std::process::ExitCode;
use std::time::Duration;

use genusfield::par::Exec;
use genusfield::selftest::{self, SuiteReport, DEFAULT_SELFTEST_SEED};

/// (criterion number, budget in seconds, suite)
type Criterion = (u32, u64, Box<dyn Fn() -> SuiteReport>);

fn main() -> ExitCode {
    let exec = Exec::Parallel;
    let seed = DEFAULT_SELFTEST_SEED;
    let criteria: Vec<Criterion> = vec![
        (1, 1, Box::new(selftest::worked_witt_example)),
        (2, 10, Box::new(move || selftest::witt_ring_soundness(exec, seed, 200))),
        (3, 20, Box::new(move || selftest::decomposition_invariants(exec, seed, 100))),
        (4, 20, Box::new(move || selftest::kummer_character_cross(exec))),
        (5, 5, Box::new(move || selftest::infinity_tables(exec))),
        (6, 30, Box::new(move || selftest::unit_group_oracle(exec))),
        (7, 5, Box::new(move || selftest::normalization_contracts(exec, seed, 200))),
        (8, 5, Box::new(move || selftest::length_one_coherence(exec, seed, 50))),
    ];
    let mut all_ok = true;
    for (id, budget, run) in criteria {
        let r = run();
        let budget = Duration::from_secs(budget);
        let in_time = r.elapsed <= budget;
        let ok = r.passed() && in_time;
        all_ok &= ok;
        println!(
            "criterion {} {}: {} ({} checks, {} failures, {:.2?} of {:?})",
            id,
            if ok { "PASS" } else { "FAIL" },
            r.name,
            r.checked,
            r.failures.len(),
            r.elapsed,
            budget
        );
        for f in r.failures.iter().take(5) {
            println!("    {}", f);
        }
        if !in_time {
            println!("    over the time budget");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
