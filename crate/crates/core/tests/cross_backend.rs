use std::f64::consts::PI;

use floqsync::circuit::{FloquetParams, InitialStateSpec};
use floqsync::lattice::{build_heavy_hex, SizeClass};
use floqsync::mps::{self, MpsConfig};
use floqsync::statevector::{self, SvOptions};
use floqsync::TrajectoryRecord;

fn max_dev(a: &TrajectoryRecord, b: &TrajectoryRecord) -> f64 {
    let ya = a.y.as_ref().unwrap().iter().flatten();
    let yb = b.y.as_ref().unwrap().iter().flatten();
    a.x.iter().flatten().zip(b.x.iter().flatten()).chain(ya.zip(yb)).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

#[test]
fn exact_mps_matches_statevector_on_l19() {
    let g = build_heavy_hex(SizeClass::L19).unwrap();
    for (zz, seed) in [(-0.25, 1u64), (-0.02, 2)] {
        let p = FloquetParams::from_pi_multiples(-0.25, zz, 0.25, 3);
        let init = InitialStateSpec::new(2.0 * PI, seed);
        let sv = statevector::run_trajectory(&g, &p, &init, &SvOptions::default()).unwrap();
        let m = mps::run_trajectory(&g, &p, &init, MpsConfig::new(1024, 0.0)).unwrap();
        let d = max_dev(&sv.record, &m.record);
        assert!(d < 1e-10);
    }
}

#[test]
fn ordering_does_not_change_exact_results() {
    let g = build_heavy_hex(SizeClass::L19).unwrap();
    let sub = g.induced_subgraph(&(0..10).collect::<Vec<_>>()).unwrap();
    let p = FloquetParams::from_pi_multiples(-0.25, -0.1, 0.25, 8);
    let init = InitialStateSpec::new(2.0 * PI, 9);
    let a = mps::run_trajectory(&sub, &p, &init, MpsConfig::new(64, 0.0)).unwrap();
    let order: Vec<usize> = (0..10).rev().collect();
    let b = mps::run_trajectory_with_ordering(&sub, &p, &init, MpsConfig::new(64, 0.0), &order).unwrap();
    assert!(max_dev(&a.record, &b.record) < 1e-11);
}

#[test]
fn truncated_mps_reports_discarded_weight() {
    let g = build_heavy_hex(SizeClass::L19).unwrap();
    let p = FloquetParams::from_pi_multiples(-0.25, -0.25, 0.25, 6);
    let run = mps::run_trajectory(&g, &p, &InitialStateSpec::new(2.0 * PI, 4), MpsConfig::new(4, 1e-10)).unwrap();
    assert!(run.diagnostics.iter().all(|d| d.max_bond_dim <= 4));
    assert!(run.diagnostics.iter().map(|d| d.cycle_truncation_weight).sum::<f64>() > 0.0);
    assert!(run.record.x.iter().flatten().all(|v| v.abs() <= 1.0 + 1e-9));
}
