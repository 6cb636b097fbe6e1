//! The acceptance checklist at full scale: one test per criterion, each
//! printing its pass/fail line (visible under `--nocapture`; on failure the
//! line is in the panic message). Criteria with a stated runtime budget
//! assert it.

use std::time::{Duration, Instant};

use absum::suite::{self, Budget, CriterionOutcome};

fn check(o: CriterionOutcome) {
    let status = if o.pass { "PASS" } else { "FAIL" };
    let line = format!("{status} {:02} {}: {}", o.id, o.name, o.details);
    println!("{line}");
    assert!(o.pass, "{line}");
}

fn check_timed(o: CriterionOutcome, budget: Duration, started: Instant) {
    let elapsed = started.elapsed();
    check(o);
    assert!(
        elapsed <= budget,
        "criterion ran {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_01_pointwise_oracle() {
    let t = Instant::now();
    check_timed(
        suite::criterion_pointwise(Budget::Full),
        Duration::from_secs(30),
        t,
    );
}

#[test]
fn criterion_02_small_sums() {
    check(suite::criterion_small_sums(Budget::Full));
}

#[test]
fn criterion_03_zeta_identity() {
    let t = Instant::now();
    check_timed(
        suite::criterion_zeta_identity(Budget::Full),
        Duration::from_secs(5),
        t,
    );
}

#[test]
fn criterion_04_mean_value() {
    let t = Instant::now();
    check_timed(
        suite::criterion_mean_value(Budget::Full),
        Duration::from_secs(120),
        t,
    );
}

#[test]
fn criterion_05_progression_decay() {
    check(suite::criterion_progression_decay(Budget::Full));
}

#[test]
fn criterion_06_two_route_constant() {
    check(suite::criterion_two_route_c(Budget::Full));
}

#[test]
fn criterion_07_q_residual_exponent() {
    check(suite::criterion_q_residual(Budget::Full));
}

#[test]
fn criterion_08_shifted_divisor_fit() {
    check(suite::criterion_dk_shift_fit(Budget::Full));
}

#[test]
fn criterion_09_invariants() {
    let t = Instant::now();
    check_timed(
        suite::criterion_invariants(Budget::Full),
        Duration::from_secs(120),
        t,
    );
}

/// Byte-identical `verify --budget small` output across runs and worker
/// counts, plus the in-process determinism sweep.
#[test]
fn criterion_10_determinism() {
    let o = suite::criterion_determinism(Budget::Full);
    assert!(o.pass, "FAIL 10 {}: {}", o.name, o.details);

    let bin = env!("CARGO_BIN_EXE_absum");
    let run = |extra: &[&str]| {
        let out = std::process::Command::new(bin)
            .args(["verify", "--budget", "small"])
            .args(extra)
            .output()
            .expect("spawn verify");
        assert!(out.status.success(), "verify exited nonzero");
        out.stdout
    };
    let base = run(&[]);
    assert_eq!(base, run(&[]), "repeat run differs");
    assert_eq!(base, run(&["--threads", "1"]), "threads=1 differs");
    assert_eq!(base, run(&["--threads", "3"]), "threads=3 differs");
    println!(
        "PASS 10 {}: {}; verify output byte-identical across runs and worker counts",
        o.name, o.details
    );
}
