//! Floquet model parameters, the one-cycle gate program and initial states.
//!
//! Conventions used throughout the crate:
//!
//! * `R_Z(θ) = exp(-i θ Z / 2)`, so a transverse spin with in-plane angle `φ`
//!   is rotated to `φ + θ`. Stroboscopic precession of a polarized state
//!   therefore reads `<X> = cos(nθ_Z + φ)`, `<Y> = +sin(nθ_Z + φ)`.
//! * Two-site matrices act on the basis `|s_a s_b>` with index `2 s_a + s_b`,
//!   where `a` is the first site named by the gate.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::lattice::LatticeGraph;

pub type Mat2 = [[C64; 2]; 2];
pub type Mat4 = [[C64; 4]; 4];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Gate angles of one Floquet cycle plus the number of cycles to run.
///
/// `theta_xx = theta_yy = -J_x T`, `theta_zz = -J_z T` and `theta_z = h_z T`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloquetParams {
    pub theta_xx: f64,
    pub theta_zz: f64,
    pub theta_z: f64,
    pub n_cycles: usize,
}

impl FloquetParams {
    pub fn new(theta_xx: f64, theta_zz: f64, theta_z: f64, n_cycles: usize) -> Self {
        Self { theta_xx, theta_zz, theta_z, n_cycles }
    }

    /// Angles given as multiples of π.
    pub fn from_pi_multiples(xx: f64, zz: f64, z: f64, n_cycles: usize) -> Self {
        use std::f64::consts::PI;
        Self::new(xx * PI, zz * PI, z * PI, n_cycles)
    }

    pub fn is_isotropic(&self) -> bool {
        self.theta_xx == self.theta_zz
    }

    pub fn is_finite(&self) -> bool {
        self.theta_xx.is_finite() && self.theta_zz.is_finite() && self.theta_z.is_finite()
    }

    /// Same interaction, no field: the reference circuit for mitigation.
    pub fn reference(&self) -> Self {
        Self { theta_z: 0.0, ..*self }
    }
}

/// Randomized in-plane product state: `φ_j ~ U[0, phi_max]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialStateSpec {
    pub phi_max: f64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phases: Option<Vec<f64>>,
}

impl InitialStateSpec {
    pub fn new(phi_max: f64, seed: u64) -> Self {
        Self { phi_max, seed, phases: None }
    }

    /// Fully polarized along +x.
    pub fn ferromagnetic() -> Self {
        Self::new(0.0, 0)
    }

    /// Draws the phases for `num_sites` sites, stores them and returns them.
    pub fn sample_phases(&mut self, num_sites: usize) -> &[f64] {
        let phases = sample_phases(self.phi_max, self.seed, num_sites);
        self.phases.insert(phases)
    }

    /// Materialized phases if present, otherwise a fresh draw.
    pub fn phases_for(&self, num_sites: usize) -> Vec<f64> {
        match &self.phases {
            Some(p) if p.len() == num_sites => p.clone(),
            _ => sample_phases(self.phi_max, self.seed, num_sites),
        }
    }
}

/// Independent uniform draws in `[0, phi_max]`. Site `j` uses ChaCha stream `j`
/// so a site's phase depends only on `(seed, j)`, never on `num_sites`.
pub fn sample_phases(phi_max: f64, seed: u64, num_sites: usize) -> Vec<f64> {
    (0..num_sites)
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j as u64);
            phi_max * rng.random::<f64>()
        })
        .collect()
}

/// Bloch vector of `R_Z(φ) H |0>`.
pub fn initial_bloch(phi: f64) -> [f64; 3] {
    [phi.cos(), phi.sin(), 0.0]
}

/// Local amplitudes of `R_Z(φ) H |0>` up to global phase: `(1, e^{iφ}) / √2`.
pub fn initial_amplitudes(phi: f64) -> [C64; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [C64::new(s, 0.0), C64::from_polar(s, phi)]
}

pub fn rz_matrix(theta: f64) -> Mat2 {
    [[C64::from_polar(1.0, -theta / 2.0), ZERO], [ZERO, C64::from_polar(1.0, theta / 2.0)]]
}

/// `exp[-(i/2)(θ_XX (XX + YY) + θ_ZZ ZZ)]` in closed block form.
pub fn rxxz_matrix(theta_xx: f64, theta_zz: f64) -> Mat4 {
    let outer = C64::from_polar(1.0, -theta_zz / 2.0);
    let inner = C64::from_polar(1.0, theta_zz / 2.0);
    let diag = inner * theta_xx.cos();
    let off = inner * C64::new(0.0, -theta_xx.sin());
    [
        [outer, ZERO, ZERO, ZERO],
        [ZERO, diag, off, ZERO],
        [ZERO, off, diag, ZERO],
        [ZERO, ZERO, ZERO, outer],
    ]
}

pub fn swap_matrix() -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = ONE;
    m[1][2] = ONE;
    m[2][1] = ONE;
    m[3][3] = ONE;
    m
}

/// Product `a · b`.
pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// The same operator with the roles of the two sites exchanged.
pub fn mat4_swap_sites(m: &Mat4) -> Mat4 {
    const P: [usize; 4] = [0, 2, 1, 3];
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[P[i]][P[j]] = m[i][j];
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    OneSite { site: usize, matrix: Mat2 },
    TwoSite { a: usize, b: usize, layer: usize, matrix: Mat4 },
}

impl Gate {
    pub fn sites(&self) -> Vec<usize> {
        match *self {
            Gate::OneSite { site, .. } => vec![site],
            Gate::TwoSite { a, b, .. } => vec![a, b],
        }
    }
}

/// Gate list of one cycle: the `R_Z` layer on every site, then interaction
/// layers 0, 1, 2, ... in order. Applying the list left to right realizes
/// `U_F = [∏ R_XXZ] [∏ R_Z]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloquetProgram {
    pub num_sites: usize,
    pub num_layers: usize,
    pub gates: Vec<Gate>,
}

impl FloquetProgram {
    pub fn num_one_site(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::OneSite { .. })).count()
    }

    pub fn num_two_site(&self) -> usize {
        self.gates.len() - self.num_one_site()
    }
}

pub fn build_program(params: &FloquetParams, graph: &LatticeGraph) -> FloquetProgram {
    let rz = rz_matrix(params.theta_z);
    let rxxz = rxxz_matrix(params.theta_xx, params.theta_zz);
    let mut gates: Vec<Gate> =
        (0..graph.num_sites()).map(|site| Gate::OneSite { site, matrix: rz }).collect();
    for layer in 0..graph.num_layers() {
        gates.extend(graph.layer_edges(layer).map(|(a, b)| Gate::TwoSite { a, b, layer, matrix: rxxz }));
    }
    FloquetProgram { num_sites: graph.num_sites(), num_layers: graph.num_layers(), gates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_heavy_hex, load_edge_list, SizeClass};
    use std::collections::BTreeSet;
    use std::f64::consts::PI;

    #[test]
    fn phases_are_deterministic_and_bounded() {
        assert!(sample_phases(0.0, 99, 10).iter().all(|&p| p == 0.0));
        let a = sample_phases(2.0 * PI, 7, 50);
        assert_eq!(a, sample_phases(2.0 * PI, 7, 50));
        assert!(a.iter().all(|&p| (0.0..=2.0 * PI).contains(&p)));
        // prefix property: phase j does not depend on the site count
        assert_eq!(&sample_phases(PI, 3, 80)[..20], sample_phases(PI, 3, 20).as_slice());
    }

    #[test]
    fn phase_mean_is_half_the_interval() {
        let n = 10_000;
        let p = sample_phases(PI, 11, n);
        let mean = p.iter().sum::<f64>() / n as f64;
        let stderr = PI / 12f64.sqrt() / (n as f64).sqrt();
        assert!((mean - PI / 2.0).abs() < 5.0 * stderr, "mean {mean}");
    }

    #[test]
    fn spec_stores_phases() {
        let mut spec = InitialStateSpec::new(PI, 5);
        let p = spec.sample_phases(4).to_vec();
        assert_eq!(spec.phases.as_deref(), Some(p.as_slice()));
        assert_eq!(spec.phases_for(4), p);
    }

    #[test]
    fn bloch_vectors() {
        let close = |a: [f64; 3], b: [f64; 3]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15);
        assert!(close(initial_bloch(0.0), [1.0, 0.0, 0.0]));
        assert!(close(initial_bloch(PI / 2.0), [0.0, 1.0, 0.0]));
        assert!(close(initial_bloch(PI), [-1.0, 0.0, 0.0]));
    }

    #[test]
    fn rz_then_hadamard_matches_bloch() {
        // explicit 2x2 products R_Z(φ) H |0>
        for &phi in &[0.0, PI / 2.0, PI, 1.234] {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let h0 = [C64::new(s, 0.0), C64::new(s, 0.0)];
            let rz = rz_matrix(phi);
            let psi = [rz[0][0] * h0[0], rz[1][1] * h0[1]];
            let x = 2.0 * (psi[0].conj() * psi[1]).re;
            let y = 2.0 * (psi[0].conj() * psi[1]).im;
            let b = initial_bloch(phi);
            assert!((x - b[0]).abs() < 1e-14 && (y - b[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn rxxz_spot_values() {
        let u = rxxz_matrix(-0.25 * PI, -0.25 * PI);
        assert!((u[0][0] - C64::from_polar(1.0, PI / 8.0)).norm() < 1e-14);
        let e = C64::from_polar(1.0, -PI / 8.0);
        assert!((u[1][1] - e * (PI / 4.0).cos()).norm() < 1e-14);
        assert!((u[2][1] - e * C64::new(0.0, (PI / 4.0).sin())).norm() < 1e-14);
        let id = rxxz_matrix(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { ONE } else { ZERO };
                assert!((id[i][j] - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn program_layout() {
        let g = load_edge_list("0 1\n").unwrap();
        let p = build_program(&FloquetParams::new(0.1, 0.2, 0.3, 1), &g);
        assert_eq!(p.gates.len(), 3);
        assert!(matches!(p.gates[0], Gate::OneSite { site: 0, .. }));
        assert!(matches!(p.gates[1], Gate::OneSite { site: 1, .. }));
        assert!(matches!(p.gates[2], Gate::TwoSite { a: 0, b: 1, layer: 0, .. }));

        let g = build_heavy_hex(SizeClass::L156).unwrap();
        let p = build_program(&FloquetParams::from_pi_multiples(-0.25, -0.25, 0.25, 30), &g);
        assert_eq!(p.num_one_site(), 156);
        assert_eq!(p.num_two_site(), g.edges().len());
        assert_eq!(p.gates.len(), 156 + g.edges().len());
        // disjoint supports within each layer, layers in order
        let mut last_layer = 0;
        let mut support = BTreeSet::new();
        for gate in &p.gates {
            if let Gate::TwoSite { a, b, layer, .. } = *gate {
                assert!(layer >= last_layer);
                if layer != last_layer {
                    support.clear();
                    last_layer = layer;
                }
                assert!(support.insert(a) && support.insert(b));
            }
        }
    }
}
