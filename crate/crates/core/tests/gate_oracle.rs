mod common;

use common::*;
use floqsync::circuit::{rxxz_matrix, rz_matrix, swap_matrix};
use std::f64::consts::PI;

#[test]
fn rxxz_matches_matrix_exponential() {
    let mut rng = Stream(11);
    for _ in 0..100 {
        let (txx, tzz) = (rng.uniform(-PI, PI), rng.uniform(-PI, PI));
        let got = to_dense4(&rxxz_matrix(txx, tzz));
        assert!(max_abs_diff(&got, &rxxz_oracle(txx, tzz)) < 1e-12, "angles ({txx}, {tzz})");
        assert!(max_abs_diff(&mul(&got, &adjoint(&got)), &eye(4)) < 1e-12);
    }
}

#[test]
fn rxxz_special_points() {
    assert!(max_abs_diff(&to_dense4(&rxxz_matrix(0.0, 0.0)), &eye(4)) < 1e-15);
    // θ_XX = π/2, θ_ZZ = 0 swaps |01> and |10> with a phase of -i
    let m = rxxz_matrix(PI / 2.0, 0.0);
    assert!((m[1][2] - c(0.0, -1.0)).norm() < 1e-15 && (m[2][1] - c(0.0, -1.0)).norm() < 1e-15);
    assert!(m[1][1].norm() < 1e-15 && (m[0][0] - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn rz_matches_exponential() {
    for theta in [0.0, 0.3, -1.7, PI, 2.0 * PI] {
        let oracle = expm(&scale(&pauli('Z'), c(0.0, -theta / 2.0)));
        assert!(max_abs_diff(&to_dense2(&rz_matrix(theta)), &oracle) < 1e-13);
    }
}

#[test]
fn rxxz_symmetries() {
    let swap = to_dense4(&swap_matrix());
    let generators: Vec<Dense> = ['X', 'Y', 'Z']
        .iter()
        .map(|&p| add(&kron(&pauli(p), &pauli('I')), &kron(&pauli('I'), &pauli(p))))
        .collect();
    let commutator = |a: &Dense, b: &Dense| add(&mul(a, b), &scale(&mul(b, a), c(-1.0, 0.0)));
    let mut rng = Stream(5);
    for _ in 0..50 {
        let (txx, tzz) = (rng.uniform(-PI, PI), rng.uniform(-PI, PI));
        let m = to_dense4(&rxxz_matrix(txx, tzz));
        assert!(max_abs_diff(&commutator(&m, &swap), &zeros(4)) < 1e-12);
        assert!(max_abs_diff(&commutator(&m, &generators[2]), &zeros(4)) < 1e-12);
        let iso = to_dense4(&rxxz_matrix(txx, txx));
        for g in &generators {
            assert!(max_abs_diff(&commutator(&iso, g), &zeros(4)) < 1e-12);
        }
    }
}
