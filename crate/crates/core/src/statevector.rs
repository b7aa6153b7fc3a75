//! Exact statevector evolution. Site `j` is bit `j` of the amplitude index
//! (site 0 least significant).

use faer::Mat;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::circuit::{build_program, initial_amplitudes, mat4_swap_sites, FloquetParams, FloquetProgram, Gate, InitialStateSpec, Mat2, Mat4};
use crate::error::{Error, Result};
use crate::lattice::LatticeGraph;
use crate::linalg;
use crate::record::TrajectoryRecord;

/// Default qubit limit (1 GiB of amplitudes).
pub const DEFAULT_MAX_QUBITS: usize = 26;
/// Hard limit reachable with an explicit override.
pub const OVERRIDE_MAX_QUBITS: usize = 28;
/// Largest subsystem for a dense reduced density matrix.
pub const MAX_REDUCED_SITES: usize = 14;
/// Eigenvalues at or below this are dropped from the entropy sum.
pub const ENTROPY_CUTOFF: f64 = 1e-12;

const PAR_MIN_LEN: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Product of `R_Z(φ_j) H |0>` over all sites.
    pub fn product(phases: &[f64], max_qubits: usize) -> Result<Self> {
        let n = phases.len();
        check_capacity(n, max_qubits)?;
        let mut amps = vec![C64::new(1.0, 0.0)];
        amps.reserve_exact((1usize << n) - 1);
        // site j becomes bit j: the new factor goes into the high half
        for &phi in phases {
            let [a0, a1] = initial_amplitudes(phi);
            let len = amps.len();
            amps.extend_from_within(..);
            amps[..len].iter_mut().for_each(|v| *v *= a0);
            amps[len..].iter_mut().for_each(|v| *v *= a1);
        }
        Ok(Self { num_qubits: n, amps })
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidInput("amplitude count must be a power of two".into()));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply_one(&mut self, site: usize, m: &Mat2) {
        let half = 1usize << site;
        let kernel = |chunk: &mut [C64]| {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (v0, v1) = (*a0, *a1);
                *a0 = m[0][0] * v0 + m[0][1] * v1;
                *a1 = m[1][0] * v0 + m[1][1] * v1;
            }
        };
        if self.amps.len() >= PAR_MIN_LEN {
            self.amps.par_chunks_mut(2 * half).for_each(kernel);
        } else {
            self.amps.chunks_mut(2 * half).for_each(kernel);
        }
    }

    /// Applies a two-site gate; matrix index is `2 s_a + s_b`.
    pub fn apply_two(&mut self, a: usize, b: usize, m: &Mat4) {
        assert_ne!(a, b, "two-site gate needs distinct sites");
        let (hi, lo, m) = if a > b { (a, b, *m) } else { (b, a, mat4_swap_sites(m)) };
        let half = 1usize << hi;
        let sub = 1usize << lo;
        let pair_kernel = |(c0, c1): (&mut [C64], &mut [C64])| {
            let (a00, a01) = c0.split_at_mut(sub);
            let (a10, a11) = c1.split_at_mut(sub);
            for i in 0..sub {
                let v = [a00[i], a01[i], a10[i], a11[i]];
                let out = |r: usize| m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
                a00[i] = out(0);
                a01[i] = out(1);
                a10[i] = out(2);
                a11[i] = out(3);
            }
        };
        let parallel = self.amps.len() >= PAR_MIN_LEN;
        let blocks = self.amps.len() / (2 * half);
        if parallel && blocks >= 4 {
            self.amps.par_chunks_mut(2 * half).for_each(|chunk| {
                let (h0, h1) = chunk.split_at_mut(half);
                h0.chunks_mut(2 * sub).zip(h1.chunks_mut(2 * sub)).for_each(pair_kernel);
            });
        } else {
            for chunk in self.amps.chunks_mut(2 * half) {
                let (h0, h1) = chunk.split_at_mut(half);
                if parallel {
                    h0.par_chunks_mut(2 * sub).zip(h1.par_chunks_mut(2 * sub)).for_each(pair_kernel);
                } else {
                    h0.chunks_mut(2 * sub).zip(h1.chunks_mut(2 * sub)).for_each(pair_kernel);
                }
            }
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) {
        match gate {
            Gate::OneSite { site, matrix } => self.apply_one(*site, matrix),
            Gate::TwoSite { a, b, matrix, .. } => self.apply_two(*a, *b, matrix),
        }
    }

    /// One Floquet cycle.
    pub fn apply_program(&mut self, program: &FloquetProgram) {
        debug_assert_eq!(program.num_sites, self.num_qubits);
        for gate in &program.gates {
            self.apply_gate(gate);
        }
    }

    /// Exact `<P_site>`.
    pub fn expect_pauli(&self, axis: Pauli, site: usize) -> f64 {
        let half = 1usize << site;
        let local = |chunk: &[C64]| -> C64 {
            let (lo, hi) = chunk.split_at(half);
            match axis {
                Pauli::Z => C64::new(lo.iter().map(|a| a.norm_sqr()).sum::<f64>() - hi.iter().map(|a| a.norm_sqr()).sum::<f64>(), 0.0),
                _ => lo.iter().zip(hi).map(|(a0, a1)| a0.conj() * a1).sum(),
            }
        };
        let acc: C64 = if self.amps.len() >= PAR_MIN_LEN {
            self.amps.par_chunks(2 * half).map(local).sum()
        } else {
            self.amps.chunks(2 * half).map(local).sum()
        };
        match axis {
            Pauli::X => 2.0 * acc.re,
            Pauli::Y => 2.0 * acc.im,
            Pauli::Z => acc.re,
        }
    }

    /// `<X_j>` and `<Y_j>` for every site.
    pub fn transverse_magnetizations(&self) -> (Vec<f64>, Vec<f64>) {
        (0..self.num_qubits)
            .map(|j| (self.expect_pauli(Pauli::X, j), self.expect_pauli(Pauli::Y, j)))
            .unzip()
    }

    /// Reduced density matrix of `sites` (partial trace over the rest).
    pub fn reduce(&self, sites: &[usize]) -> Result<DensityMatrix> {
        let mut sub: Vec<usize> = sites.to_vec();
        sub.sort_unstable();
        sub.dedup();
        if sub.len() != sites.len() || sub.iter().any(|&s| s >= self.num_qubits) {
            return Err(Error::InvalidInput(format!("bad subsystem {sites:?}")));
        }
        if sub.len() > MAX_REDUCED_SITES {
            return Err(Error::CapacityExceeded(format!(
                "reduced density matrix on {} sites (limit {MAX_REDUCED_SITES})",
                sub.len()
            )));
        }
        let rest: Vec<usize> = (0..self.num_qubits).filter(|s| !sub.contains(s)).collect();
        let scatter = |value: usize, bits: &[usize]| {
            bits.iter().enumerate().fold(0usize, |acc, (k, &b)| acc | (((value >> k) & 1) << b))
        };
        let dim = 1usize << sub.len();
        let rest_dim = 1usize << rest.len();
        let a_offsets: Vec<usize> = (0..dim).map(|i| scatter(i, &sub)).collect();
        let chunk = rest_dim.clamp(1, 4096);
        let mut rho = Mat::<C64>::zeros(dim, dim);
        for start in (0..rest_dim).step_by(chunk) {
            let width = chunk.min(rest_dim - start);
            let rest_offsets: Vec<usize> = (start..start + width).map(|r| scatter(r, &rest)).collect();
            let m = Mat::<C64>::from_fn(dim, width, |i, c| self.amps[a_offsets[i] | rest_offsets[c]]);
            rho += &m * m.adjoint();
        }
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(rho[(i, j)]);
            }
        }
        Ok(DensityMatrix { sites: sub, dim, data })
    }
}

fn check_capacity(n: usize, max_qubits: usize) -> Result<()> {
    let limit = max_qubits.min(OVERRIDE_MAX_QUBITS);
    if n > limit {
        return Err(Error::CapacityExceeded(format!(
            "statevector with {n} qubits exceeds the limit of {limit} (use the MPS backend or raise the limit up to {OVERRIDE_MAX_QUBITS})"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidInput("statevector needs at least one qubit".into()));
    }
    Ok(())
}

/// Dense reduced density matrix, row-major; basis bit `k` is `sites[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    pub sites: Vec<usize>,
    pub dim: usize,
    pub data: Vec<C64>,
}

impl DensityMatrix {
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i].re).sum()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::hermitian_eigenvalues(&self.data, self.dim)
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> Result<f64> {
        Ok(entropy_from_spectrum(&self.eigenvalues()?))
    }
}

/// `-Σ λ log2 λ` over eigenvalues above the cutoff.
pub fn entropy_from_spectrum(eigenvalues: &[f64]) -> f64 {
    -eigenvalues.iter().filter(|&&l| l > ENTROPY_CUTOFF).map(|&l| l * l.log2()).sum::<f64>()
}

#[derive(Clone, Debug)]
pub struct SvOptions {
    pub max_qubits: usize,
    /// Records the entanglement entropy of this subsystem every step.
    pub entropy_subsystem: Option<Vec<usize>>,
}

impl Default for SvOptions {
    fn default() -> Self {
        Self { max_qubits: DEFAULT_MAX_QUBITS, entropy_subsystem: None }
    }
}

#[derive(Clone, Debug)]
pub struct SvRun {
    pub record: TrajectoryRecord,
    pub entropy: Option<Vec<f64>>,
}

/// Records `<X_j>`, `<Y_j>` (and optionally `S_vN`) at `n = 0..=n_cycles`.
pub fn run_trajectory(
    graph: &LatticeGraph,
    params: &FloquetParams,
    init: &InitialStateSpec,
    options: &SvOptions,
) -> Result<SvRun> {
    let phases = init.phases_for(graph.num_sites());
    let mut state = StateVector::product(&phases, options.max_qubits)?;
    let program = build_program(params, graph);
    let mut record = TrajectoryRecord::with_y(graph.num_sites());
    let mut entropy = options.entropy_subsystem.as_ref().map(|_| Vec::new());
    for n in 0..=params.n_cycles {
        if n > 0 {
            state.apply_program(&program);
        }
        let (x, y) = state.transverse_magnetizations();
        record.push_step(x, Some(y));
        if let (Some(series), Some(sub)) = (entropy.as_mut(), options.entropy_subsystem.as_ref()) {
            series.push(state.reduce(sub)?.entropy()?);
        }
    }
    Ok(SvRun { record, entropy })
}
