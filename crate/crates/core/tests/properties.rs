mod common;

use common::{run, SUITES};

fn suite(name: &str) {
    let (_, f) = SUITES.iter().find(|(n, _)| *n == name).unwrap();
    if let Err(e) = run(*f) {
        panic!("{name}: {e}");
    }
}

#[test]
fn buchberger_confluence() {
    suite("buchberger confluence");
}

#[test]
fn normal_form_idempotence() {
    suite("normal form idempotence");
}

#[test]
fn syzygy_annihilation() {
    suite("syzygy annihilation");
}

#[test]
fn differential_squares_to_zero() {
    suite("d^2 = 0");
}

#[test]
fn double_dual_of_complexes() {
    suite("double dual of complexes");
}

#[test]
fn evaluation_map_against_transpose_ext() {
    suite("ker/coker of M -> M** against Ext of D(M)");
}

#[test]
fn two_out_of_three_on_extensions() {
    suite("two out of three on extensions");
}
