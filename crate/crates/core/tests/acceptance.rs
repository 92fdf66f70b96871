//! One test per acceptance criterion. Each prints its summary line, plus the
//! failing cases if any, so `cargo test --test acceptance -- --nocapture`
//! gives a pass/fail table.

use charvar_core::acceptance::run;
use charvar_core::CharVarEngine;

fn criterion(id: usize) {
    let report = run(id, &CharVarEngine::new());
    println!("{report}");
    assert!(report.passed(), "{report}");
}

#[test]
fn criterion_01_cross_path() {
    criterion(1);
}

#[test]
fn criterion_02_irreducible_closed_forms() {
    criterion(2);
}

#[test]
fn criterion_03_sl3_closed_form() {
    criterion(3);
}

#[test]
fn criterion_04_sl4_closed_form() {
    criterion(4);
}

#[test]
fn criterion_05_degree_and_normalization() {
    criterion(5);
}

#[test]
fn criterion_06_divisibility_and_integrality() {
    criterion(6);
}

#[test]
fn criterion_07_pexp_identity() {
    criterion(7);
}

#[test]
fn criterion_08_euler_characteristics() {
    criterion(8);
}

#[test]
fn criterion_09_euler_examples() {
    criterion(9);
}

#[test]
fn criterion_10_finite_field_oracle() {
    criterion(10);
}

#[test]
fn criterion_11_plethystic_suite() {
    criterion(11);
}
