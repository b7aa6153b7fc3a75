use std::ffi::{CStr, CString};
use std::ptr;

use floqsync_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(fs_last_error()).to_string_lossy().into_owned() }
}

fn lattice(n: usize) -> *mut FsLattice {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fs_lattice_builtin(n, &mut out) }, FsStatus::Ok);
    out
}

#[test]
fn builtin_lattice_accessors() {
    let l = lattice(19);
    unsafe {
        assert_eq!(fs_lattice_num_sites(l), 19);
        assert_eq!(fs_lattice_num_edges(l), 19);
        assert_eq!(fs_lattice_num_layers(l), 3);
        let (mut a, mut b, mut layer) = (0, 0, 0);
        assert_eq!(fs_lattice_edge(l, 0, &mut a, &mut b, &mut layer), FsStatus::Ok);
        assert!(a < b && b < 19 && layer < 3);
        assert_eq!(fs_lattice_edge(l, 19, &mut a, &mut b, &mut layer), FsStatus::OutOfRange);
        fs_lattice_free(l);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fs_lattice_builtin(20, &mut out) }, FsStatus::UnsupportedTopology);
    assert!(out.is_null());
    assert!(last_error().contains("20"));
    assert_eq!(unsafe { fs_lattice_builtin(19, ptr::null_mut()) }, FsStatus::NullPointer);
    let bad = CString::new("0 0\n").unwrap();
    assert_eq!(unsafe { fs_lattice_from_edge_list(bad.as_ptr(), &mut out) }, FsStatus::InvalidInput);
    let l = lattice(19);
    assert!(last_error().is_empty());
    unsafe {
        fs_lattice_free(l);
        fs_lattice_free(ptr::null_mut());
        fs_trajectory_free(ptr::null_mut());
        assert_eq!(fs_lattice_num_sites(ptr::null()), 0);
    }
}

#[test]
fn edge_list_and_gate_matrix() {
    let text = CString::new("# triangle\n0 1\n1 2\n2 0\n").unwrap();
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { fs_lattice_from_edge_list(text.as_ptr(), &mut l) }, FsStatus::Ok);
    assert_eq!(unsafe { fs_lattice_num_layers(l) }, 3);
    unsafe { fs_lattice_free(l) };
    let mut m = [0.0f64; 32];
    assert_eq!(unsafe { fs_rxxz_matrix(0.0, 0.0, m.as_mut_ptr()) }, FsStatus::Ok);
    for k in 0..16 {
        let diag = k % 5 == 0;
        assert!((m[2 * k] - if diag { 1.0 } else { 0.0 }).abs() < 1e-15 && m[2 * k + 1].abs() < 1e-15);
    }
}

#[test]
fn ferromagnetic_run_through_both_backends() {
    let l = lattice(19);
    let params = FsFloquetParams {
        theta_xx: -0.25 * std::f64::consts::PI,
        theta_zz: -0.25 * std::f64::consts::PI,
        theta_z: 0.25 * std::f64::consts::PI,
        n_cycles: 4,
    };
    unsafe {
        let mut sv = ptr::null_mut();
        assert_eq!(fs_run_statevector(l, &params, 0.0, 1, &mut sv), FsStatus::Ok);
        let mut mps = ptr::null_mut();
        assert_eq!(fs_run_mps(l, &params, 0.0, 1, 16, 1e-12, &mut mps), FsStatus::Ok);
        assert_eq!(fs_trajectory_num_steps(sv), 5);
        assert_eq!(fs_trajectory_num_sites(mps), 19);
        for n in 0..5 {
            let (mut x, mut y, mut xm, mut ym) = (0.0, 0.0, 0.0, 0.0);
            assert_eq!(fs_trajectory_xy(sv, n, 7, &mut x, &mut y), FsStatus::Ok);
            assert_eq!(fs_trajectory_xy(mps, n, 7, &mut xm, &mut ym), FsStatus::Ok);
            let want = (n as f64 * std::f64::consts::FRAC_PI_4).cos();
            assert!((x - want).abs() < 1e-9 && (xm - want).abs() < 1e-9 && (y - ym).abs() < 1e-9);
        }
        let mut kappa = [0.0; 5];
        assert_eq!(fs_trajectory_kappa(sv, kappa.as_mut_ptr(), 5), FsStatus::Ok);
        assert!(kappa.iter().all(|k| (k - 1.0).abs() < 1e-9));
        assert_eq!(fs_trajectory_kappa(sv, kappa.as_mut_ptr(), 4), FsStatus::OutOfRange);
        let mut map = [0.0; 19];
        assert_eq!(fs_trajectory_local_map(sv, l, 2, 1, 4, map.as_mut_ptr(), 19), FsStatus::Ok);
        assert!(map.iter().all(|k| (k - 1.0).abs() < 1e-9));
        let (mut x, mut y) = (0.0, 0.0);
        assert_eq!(fs_trajectory_xy(sv, 5, 0, &mut x, &mut y), FsStatus::OutOfRange);
        assert_eq!(fs_run_mps(l, &params, 0.0, 1, 0, 1e-12, &mut mps), FsStatus::InvalidInput);
        fs_trajectory_free(sv);
        fs_trajectory_free(mps);
        fs_lattice_free(l);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/floqsync.h")).unwrap();
    for name in [
        "fs_last_error",
        "fs_lattice_builtin",
        "fs_lattice_from_edge_list",
        "fs_run_statevector",
        "fs_run_mps",
        "fs_trajectory_kappa",
        "fs_trajectory_local_map",
        "typedef struct FsLattice FsLattice",
        "FS_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
