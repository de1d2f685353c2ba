//! The acceptance gate: one test per shipped criterion, each printing its
//! PASS/FAIL line with the measured value against the pinned target.
//! Run with `cargo test --test acceptance -- --nocapture` to see the table.

use logpot::suite;

fn check(id: usize) {
    let r = suite::run_criterion(id);
    println!("{}", r.line());
    assert!(r.pass, "{}", r.line());
}

#[test]
fn criterion_01_interval_capacity() {
    check(1);
}

#[test]
fn criterion_02_standard_interval() {
    check(2);
}

#[test]
fn criterion_03_symmetric_two_interval() {
    check(3);
}

#[test]
fn criterion_04_frostman_suite() {
    check(4);
}

#[test]
fn criterion_05_comparison_suite() {
    check(5);
}

#[test]
fn criterion_06_bounds_chain() {
    check(6);
}

#[test]
fn criterion_07_chebyshev_fekete_oracles() {
    check(7);
}

#[test]
fn criterion_08_oprl_round_trip() {
    check(8);
}

#[test]
fn criterion_09_regularity_verdicts() {
    check(9);
}

#[test]
fn criterion_10_sum_of_regular() {
    check(10);
}

#[test]
fn criterion_11_local_mass_scan() {
    check(11);
}

#[test]
fn criterion_12_pure_point_bound() {
    check(12);
}

#[test]
fn criterion_13_thouless_free() {
    check(13);
}

#[test]
fn criterion_14_almost_mathieu() {
    check(14);
}

#[test]
fn criterion_15_rotation_opuc() {
    check(15);
}

#[test]
fn criterion_16_balayage_moments() {
    check(16);
}

#[test]
fn criterion_17_cantor_chain() {
    check(17);
}
