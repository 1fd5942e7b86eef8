//! Acceptance suite: one test per shipped claim, each printing a
//! `PASS`/`FAIL` line (visible with `--nocapture`) and asserting it.
//!
//! The tolerances live in `acceptance::Expectations::default()`; the checks
//! here run with the default configuration (10^7 Monte Carlo samples,
//! seed 42).

use hypack_core::acceptance::{run_criterion, AcceptanceConfig, CheckResult};

fn run(id: usize) -> CheckResult {
    let cfg = AcceptanceConfig::default();
    let r = run_criterion(id, &cfg).expect("criterion evaluation failed");
    println!(
        "[{}] criterion {:2}: {} -- {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.id,
        r.name,
        r.detail
    );
    r
}

fn assert_pass(id: usize) {
    let r = run(id);
    assert!(r.pass, "criterion {} ({}) failed: {}", r.id, r.name, r.detail);
}

#[test]
fn c01_parameter_domain_lower_bound() {
    assert_pass(1);
}

#[test]
fn c02_density_optimum() {
    assert_pass(2);
}

#[test]
fn c03_sweep_unimodality() {
    assert_pass(3);
}

#[test]
fn c04_density_near_lower_bound() {
    assert_pass(4);
}

#[test]
fn c05_vanishing_at_upper_bound() {
    assert_pass(5);
}

#[test]
fn c06_height_density_monotonicity_witness() {
    assert_pass(6);
}

#[test]
fn c07_gram_matrix_references() {
    assert_pass(7);
}

#[test]
fn c08_height_equals_half_plane_distance() {
    assert_pass(8);
}

#[test]
fn c09_piece_volumes_vs_quadrature() {
    assert_pass(9);
}

#[test]
fn c10_closed_forms_vs_monte_carlo() {
    assert_pass(10);
}

#[test]
fn c11_lobachevsky_series_vs_quadrature() {
    assert_pass(11);
}

#[test]
fn c12_decomposition_fixtures() {
    assert_pass(12);
}

/// Negative control: a tampered expectation must flip its criterion to
/// FAIL, proving the checks are live.
#[test]
fn tampered_optimum_is_flagged() {
    let mut cfg = AcceptanceConfig::default();
    cfg.expectations.delta_opt = 0.9;
    let r = run_criterion(2, &cfg).unwrap();
    assert!(!r.pass, "tampered delta_opt went undetected: {}", r.detail);
}
