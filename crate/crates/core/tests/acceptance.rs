//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p galois-qudit --test acceptance -- --nocapture`.

use std::process::Command;

use galois_qudit::verify::{run_criterion, CRITERIA};

const SEED: u64 = 0;

/// Criterion 10 end to end: the binary's report must be byte-identical across
/// two runs with the same seed.
fn binary_determinism() -> (bool, String) {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gq"))
            .args(["verify", "all", "--seed", &SEED.to_string(), "--json"])
            .output()
            .expect("gq runs")
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    (ok, format!("gq verify all --seed {SEED} twice: {} bytes, identical = {}", a.stdout.len(), a.stdout == b.stdout))
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let mut r = run_criterion(id, SEED);
        if id == 10 {
            let (ok, detail) = binary_determinism();
            r.pass &= ok;
            r.detail = format!("{}; {detail}", r.detail);
        }
        println!("{} {:>2} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.name, r.detail);
        if !r.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
