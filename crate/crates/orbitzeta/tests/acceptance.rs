//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test -p orbitzeta --test acceptance -- --nocapture`.

use orbitzeta::verify::{self, CriterionResult, DEFAULT_SEED};

fn report(result: CriterionResult) {
    println!("{}", result.line());
    assert!(result.passed, "{}", result.line());
}

#[test]
fn criterion_01_mobius_round_trip() {
    report(verify::criterion_1(DEFAULT_SEED));
}

#[test]
fn criterion_02_product_orbit_formula() {
    report(verify::criterion_2(DEFAULT_SEED));
}

#[test]
fn criterion_03_m_fold_prime_powers() {
    report(verify::criterion_3());
}

#[test]
fn criterion_04_product_closed_form() {
    report(verify::criterion_4());
}

#[test]
fn criterion_05_euler_constant_c3() {
    report(verify::criterion_5());
}

#[test]
fn criterion_06_perron_square() {
    report(verify::criterion_6());
}

#[test]
fn criterion_07_feigenbaum() {
    report(verify::criterion_7());
}

#[test]
fn criterion_08_ghost_decomposition() {
    report(verify::criterion_8());
}

#[test]
fn criterion_09_continuation() {
    report(verify::criterion_9());
}

#[test]
fn criterion_10_boundary_zeros() {
    report(verify::criterion_10());
}

#[test]
fn criterion_11_radius_product_law() {
    report(verify::criterion_11(DEFAULT_SEED));
}

#[test]
fn criterion_12_sparse_product_growth() {
    report(verify::criterion_12());
}
