//! Matrix-product-state evolution of the Floquet program.
//!
//! Lattice sites are laid on a chain by a fixed ordering. Two-site gates on
//! chain-adjacent sites are applied by contracting the pair, applying the
//! gate and splitting with a truncated SVD. Gates on distant sites are routed
//! with swaps: the first site walks next to the second, the gate is applied,
//! and the walk is undone so the site-to-chain map never changes.
//!
//! The state is kept in mixed canonical form around an orthogonality center:
//! tensors left of the center are left-orthonormal, tensors right of it are
//! right-orthonormal.

use std::collections::VecDeque;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::circuit::{build_program, initial_amplitudes, mat4_swap_sites, swap_matrix, FloquetParams, FloquetProgram, Gate, InitialStateSpec, Mat2, Mat4};
use crate::error::{Error, Result};
use crate::lattice::LatticeGraph;
use crate::linalg::{self, view};
use crate::record::TrajectoryRecord;
use crate::statevector::Pauli;

pub const DEFAULT_CUTOFF: f64 = 1e-10;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Truncation policy: keep at most `chi_max` singular values, and only those
/// above `cutoff` relative to the 2-norm of the spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MpsConfig {
    pub chi_max: usize,
    pub cutoff: f64,
}

impl MpsConfig {
    pub fn new(chi_max: usize, cutoff: f64) -> Self {
        Self { chi_max, cutoff }
    }
}

/// Site tensor with axes `(left bond, physical, right bond)`, row-major.
/// Read as a matrix it is either `(2 dl) x dr` or `dl x (2 dr)` without
/// moving data.
#[derive(Clone, Debug, PartialEq)]
struct Tensor {
    dl: usize,
    dr: usize,
    data: Vec<C64>,
}

impl Tensor {
    fn at(&self, l: usize, s: usize, r: usize) -> C64 {
        self.data[(l * 2 + s) * self.dr + r]
    }
}

#[derive(Clone, Debug)]
pub struct MpsState {
    tensors: Vec<Tensor>,
    /// chain position -> lattice site
    site_at: Vec<usize>,
    /// lattice site -> chain position
    pos_of: Vec<usize>,
    center: usize,
    config: MpsConfig,
    cumulative_truncation: f64,
}

impl MpsState {
    /// Product state `⊗_j R_Z(φ_j) H |0>` laid out along `ordering`
    /// (`ordering[p]` is the lattice site at chain position `p`).
    pub fn product(phases: &[f64], ordering: &[usize], config: MpsConfig) -> Result<Self> {
        let n = phases.len();
        if n == 0 {
            return Err(Error::InvalidInput("MPS needs at least one site".into()));
        }
        if config.chi_max == 0 || !(config.cutoff >= 0.0) {
            return Err(Error::InvalidInput(format!("invalid truncation policy {config:?}")));
        }
        let mut pos_of = vec![usize::MAX; n];
        if ordering.len() != n {
            return Err(Error::InvalidInput(format!("ordering has {} entries for {n} sites", ordering.len())));
        }
        for (p, &s) in ordering.iter().enumerate() {
            if s >= n || pos_of[s] != usize::MAX {
                return Err(Error::InvalidInput(format!("ordering is not a permutation (site {s})")));
            }
            pos_of[s] = p;
        }
        let tensors = ordering
            .iter()
            .map(|&s| Tensor { dl: 1, dr: 1, data: initial_amplitudes(phases[s]).to_vec() })
            .collect();
        Ok(Self { tensors, site_at: ordering.to_vec(), pos_of, center: 0, config, cumulative_truncation: 0.0 })
    }

    pub fn num_sites(&self) -> usize {
        self.tensors.len()
    }

    pub fn ordering(&self) -> &[usize] {
        &self.site_at
    }

    pub fn config(&self) -> MpsConfig {
        self.config
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// Sum of discarded relative squared singular values over all splits.
    pub fn cumulative_truncation(&self) -> f64 {
        self.cumulative_truncation
    }

    /// Bond dimensions between consecutive chain positions.
    pub fn bond_dims(&self) -> Vec<usize> {
        self.tensors[..self.tensors.len() - 1].iter().map(|t| t.dr).collect()
    }

    pub fn max_bond_dim(&self) -> usize {
        self.bond_dims().into_iter().max().unwrap_or(1)
    }

    /// Single-site tensor at the position of `site`, as `[s][l * dr + r]`.
    pub fn site_tensor(&self, site: usize) -> (usize, usize, Vec<Vec<C64>>) {
        let t = &self.tensors[self.pos_of[site]];
        let per_s = (0..2)
            .map(|s| (0..t.dl).flat_map(|l| (0..t.dr).map(move |r| (l, r))).map(|(l, r)| t.at(l, s, r)).collect())
            .collect();
        (t.dl, t.dr, per_s)
    }

    /// Moves the orthogonality center with QR steps.
    pub fn move_center(&mut self, target: usize) {
        assert!(target < self.num_sites());
        while self.center < target {
            let c = self.center;
            let t = &self.tensors[c];
            let (q, r, k) = linalg::thin_qr(&t.data, 2 * t.dl, t.dr);
            let dl = t.dl;
            let next = &self.tensors[c + 1];
            let merged = linalg::matmul(&r, &next.data, k, next.dl, 2 * next.dr);
            let ndr = next.dr;
            self.tensors[c] = Tensor { dl, dr: k, data: q };
            self.tensors[c + 1] = Tensor { dl: k, dr: ndr, data: merged };
            self.center += 1;
        }
        while self.center > target {
            let c = self.center;
            let t = &self.tensors[c];
            // LQ of the dl x (2 dr) matrix through QR of its adjoint
            let adj = adjoint(&t.data, t.dl, 2 * t.dr);
            let (q, r, k) = linalg::thin_qr(&adj, 2 * t.dr, t.dl);
            let right = adjoint(&q, 2 * t.dr, k);
            let left_factor = adjoint(&r, k, t.dl);
            let dr = t.dr;
            let prev = &self.tensors[c - 1];
            let merged = linalg::matmul(&prev.data, &left_factor, 2 * prev.dl, prev.dr, k);
            let pdl = prev.dl;
            self.tensors[c] = Tensor { dl: k, dr, data: right };
            self.tensors[c - 1] = Tensor { dl: pdl, dr: k, data: merged };
            self.center -= 1;
        }
    }

    /// Full left-to-right QR sweep followed by normalization; restores the
    /// canonical form from any state. Leaves the center at the last site.
    pub fn canonicalize(&mut self) {
        self.center = 0;
        self.move_center(self.num_sites() - 1);
        let last = self.tensors.last_mut().expect("nonempty");
        let norm = last.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        last.data.iter_mut().for_each(|v| *v /= norm);
    }

    /// Applies a one-site unitary; the canonical form is unaffected.
    pub fn apply_one(&mut self, site: usize, m: &Mat2) {
        let t = &mut self.tensors[self.pos_of[site]];
        let dr = t.dr;
        for l in 0..t.dl {
            for r in 0..dr {
                let i0 = (l * 2) * dr + r;
                let i1 = (l * 2 + 1) * dr + r;
                let (v0, v1) = (t.data[i0], t.data[i1]);
                t.data[i0] = m[0][0] * v0 + m[0][1] * v1;
                t.data[i1] = m[1][0] * v0 + m[1][1] * v1;
            }
        }
    }

    /// Applies a two-site gate (matrix index `2 s_a + s_b`), routing through
    /// swaps when the sites are not chain neighbors. Returns the discarded
    /// weight of all splits involved.
    pub fn apply_two(&mut self, site_a: usize, site_b: usize, m: &Mat4) -> Result<f64> {
        if site_a == site_b {
            return Err(Error::InvalidInput("two-site gate needs distinct sites".into()));
        }
        let (pa, pb) = (self.pos_of[site_a], self.pos_of[site_b]);
        let (lo, hi, m) = if pa < pb { (pa, pb, *m) } else { (pb, pa, mat4_swap_sites(m)) };
        let swap = swap_matrix();
        let mut weight = 0.0;
        for p in lo..hi - 1 {
            weight += self.apply_adjacent(p, &swap, true)?;
        }
        weight += self.apply_adjacent(hi - 1, &m, false)?;
        for p in (lo..hi - 1).rev() {
            weight += self.apply_adjacent(p, &swap, false)?;
        }
        Ok(weight)
    }

    /// Contract, apply, split at chain positions `(p, p + 1)`. The singular
    /// values go right when `center_right`, left otherwise.
    fn apply_adjacent(&mut self, p: usize, m: &Mat4, center_right: bool) -> Result<f64> {
        if self.center < p {
            self.move_center(p);
        } else if self.center > p + 1 {
            self.move_center(p + 1);
        }
        let (a, b) = (&self.tensors[p], &self.tensors[p + 1]);
        let (dl, dm, dr) = (a.dl, a.dr, b.dr);
        let mut theta = linalg::matmul(&a.data, &b.data, 2 * dl, dm, 2 * dr);
        // theta row (l, s1), column (s2, r)
        let cols = 2 * dr;
        for l in 0..dl {
            for r in 0..dr {
                let idx = [
                    (2 * l) * cols + r,
                    (2 * l) * cols + dr + r,
                    (2 * l + 1) * cols + r,
                    (2 * l + 1) * cols + dr + r,
                ];
                let v = idx.map(|i| theta[i]);
                for (row, &i) in idx.iter().enumerate() {
                    theta[i] = m[row][0] * v[0] + m[row][1] * v[1] + m[row][2] * v[2] + m[row][3] * v[3];
                }
            }
        }
        let svd = linalg::thin_svd(&theta, 2 * dl, cols)?;
        let (keep, discarded) = truncation_rank(&svd.s, self.config);
        let kept_norm = svd.s[..keep].iter().map(|s| s * s).sum::<f64>().sqrt();
        let scale: Vec<f64> = svd.s[..keep].iter().map(|s| s / kept_norm).collect();

        let mut left = Vec::with_capacity(2 * dl * keep);
        for row in 0..2 * dl {
            for k in 0..keep {
                let u = svd.u[row * svd.rank + k];
                left.push(if center_right { u } else { u * scale[k] });
            }
        }
        let mut right = Vec::with_capacity(keep * cols);
        for k in 0..keep {
            let f = if center_right { scale[k] } else { 1.0 };
            right.extend(svd.vh[k * cols..(k + 1) * cols].iter().map(|v| v * f));
        }
        self.tensors[p] = Tensor { dl, dr: keep, data: left };
        self.tensors[p + 1] = Tensor { dl: keep, dr, data: right };
        self.center = if center_right { p + 1 } else { p };
        self.cumulative_truncation += discarded;
        Ok(discarded)
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<f64> {
        match gate {
            Gate::OneSite { site, matrix } => {
                self.apply_one(*site, matrix);
                Ok(0.0)
            }
            Gate::TwoSite { a, b, matrix, .. } => self.apply_two(*a, *b, matrix),
        }
    }

    /// One Floquet cycle; returns the discarded weight of the cycle.
    pub fn apply_program(&mut self, program: &FloquetProgram) -> Result<f64> {
        let mut weight = 0.0;
        for gate in &program.gates {
            weight += self.apply_gate(gate)?;
        }
        Ok(weight)
    }

    /// Tensors contracted with their environments: for every chain position
    /// the array `W` such that `<O_p> = Σ conj(T) O W / <ψ|ψ>`.
    fn environment_weighted(&self) -> Vec<Vec<C64>> {
        let n = self.num_sites();
        let c = self.center;
        let mut out = vec![Vec::new(); n];
        out[c] = self.tensors[c].data.clone();
        // right environment of the bond right of q - 1, ket index first
        let mut env = identity(self.tensors[c].dr);
        for q in (1..=c).rev() {
            let t = &self.tensors[q];
            let x = linalg::matmul(&t.data, &env, 2 * t.dl, t.dr, t.dr);
            let prod = view(&x, t.dl, 2 * t.dr) * view(&t.data, t.dl, 2 * t.dr).adjoint();
            env = linalg::to_row_major(prod.as_ref());
            let prev = &self.tensors[q - 1];
            out[q - 1] = linalg::matmul(&prev.data, &env, 2 * prev.dl, prev.dr, prev.dr);
        }
        // left environment of the bond left of q + 1, ket index first
        let mut env = identity(self.tensors[c].dl);
        for q in c..n - 1 {
            let t = &self.tensors[q];
            let y = linalg::matmul(&transpose(&env, t.dl, t.dl), &t.data, t.dl, t.dl, 2 * t.dr);
            let prod = view(&y, 2 * t.dl, t.dr).transpose() * view(&t.data, 2 * t.dl, t.dr).conjugate();
            env = linalg::to_row_major(prod.as_ref());
            let next = &self.tensors[q + 1];
            out[q + 1] = linalg::matmul(&transpose(&env, next.dl, next.dl), &next.data, next.dl, next.dl, 2 * next.dr);
        }
        out
    }

    fn local_expectation(t: &Tensor, w: &[C64], op: &Mat2) -> C64 {
        let mut acc = ZERO;
        for l in 0..t.dl {
            for r in 0..t.dr {
                let c0 = t.data[(l * 2) * t.dr + r].conj();
                let c1 = t.data[(l * 2 + 1) * t.dr + r].conj();
                let w0 = w[(l * 2) * t.dr + r];
                let w1 = w[(l * 2 + 1) * t.dr + r];
                acc += c0 * (op[0][0] * w0 + op[0][1] * w1) + c1 * (op[1][0] * w0 + op[1][1] * w1);
            }
        }
        acc
    }

    fn norm_sqr_at_center(&self) -> f64 {
        self.tensors[self.center].data.iter().map(|v| v.norm_sqr()).sum()
    }

    /// `<P_j>` for every lattice site, for each requested axis.
    pub fn expect_all(&self, axes: &[Pauli]) -> Vec<Vec<f64>> {
        let weighted = self.environment_weighted();
        let norm = self.norm_sqr_at_center();
        axes.iter()
            .map(|&axis| {
                let op = pauli_matrix(axis);
                (0..self.num_sites())
                    .map(|site| {
                        let p = self.pos_of[site];
                        Self::local_expectation(&self.tensors[p], &weighted[p], &op).re / norm
                    })
                    .collect()
            })
            .collect()
    }

    pub fn expect_pauli(&self, axis: Pauli, site: usize) -> f64 {
        self.expect_all(&[axis])[0][site]
    }

    pub fn transverse_magnetizations(&self) -> (Vec<f64>, Vec<f64>) {
        let mut v = self.expect_all(&[Pauli::X, Pauli::Y]);
        let y = v.pop().expect("two axes");
        let x = v.pop().expect("two axes");
        (x, y)
    }

    /// `<ψ|ψ>` by full transfer contraction (independent of canonical form).
    pub fn norm_sqr(&self) -> f64 {
        let mut env = vec![C64::new(1.0, 0.0)];
        for t in &self.tensors {
            // env (dl x dl) -> (dr x dr)
            let y = linalg::matmul(&transpose(&env, t.dl, t.dl), &t.data, t.dl, t.dl, 2 * t.dr);
            let prod = view(&y, 2 * t.dl, t.dr).transpose() * view(&t.data, 2 * t.dl, t.dr).conjugate();
            env = linalg::to_row_major(prod.as_ref());
        }
        env[0].re
    }

    /// Dense amplitudes with lattice site `j` on bit `j`. Small chains only.
    pub fn to_amplitudes(&self) -> Result<Vec<C64>> {
        let n = self.num_sites();
        if n > 24 {
            return Err(Error::CapacityExceeded(format!("dense conversion of {n} sites")));
        }
        // chain-ordered vector: rows indexed by physical bits of positions 0..p, columns by bond
        let mut acc = vec![C64::new(1.0, 0.0)];
        let mut rows = 1usize;
        let mut bond = 1usize;
        for t in &self.tensors {
            // acc (rows x dl) · T (dl x 2dr) -> (rows x 2 dr) = (rows * 2) x dr
            acc = linalg::matmul(&acc, &t.data, rows, bond, 2 * t.dr);
            rows *= 2;
            bond = t.dr;
        }
        // row index: bit for position p sits at weight 2^(n-1-p)
        let mut amps = vec![ZERO; 1 << n];
        for (idx, &v) in acc.iter().enumerate() {
            let mut lattice_idx = 0usize;
            for p in 0..n {
                let bit = (idx >> (n - 1 - p)) & 1;
                lattice_idx |= bit << self.site_at[p];
            }
            amps[lattice_idx] = v;
        }
        Ok(amps)
    }
}

fn identity(dim: usize) -> Vec<C64> {
    let mut m = vec![ZERO; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = C64::new(1.0, 0.0);
    }
    m
}

fn transpose(m: &[C64], rows: usize, cols: usize) -> Vec<C64> {
    let mut out = vec![ZERO; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            out[j * rows + i] = m[i * cols + j];
        }
    }
    out
}

fn adjoint(m: &[C64], rows: usize, cols: usize) -> Vec<C64> {
    let mut out = vec![ZERO; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            out[j * rows + i] = m[i * cols + j].conj();
        }
    }
    out
}

pub fn pauli_matrix(axis: Pauli) -> Mat2 {
    let (o, z, i) = (C64::new(1.0, 0.0), ZERO, C64::new(0.0, 1.0));
    match axis {
        Pauli::X => [[z, o], [o, z]],
        Pauli::Y => [[z, -i], [i, z]],
        Pauli::Z => [[o, z], [z, -o]],
    }
}

/// Number of singular values to keep and the discarded relative weight.
fn truncation_rank(s: &[f64], config: MpsConfig) -> (usize, f64) {
    let total: f64 = s.iter().map(|v| v * v).sum();
    if total == 0.0 {
        return (1, 0.0);
    }
    let threshold = config.cutoff * total.sqrt();
    let keep = s.iter().take_while(|&&v| v > threshold).count().clamp(1, config.chi_max);
    let tail: f64 = s[keep..].iter().map(|v| v * v).sum();
    (keep, tail / total)
}

/// Bandwidth-style chain ordering: reverse Cuthill-McKee from every
/// minimum-degree start, refined by adjacent transpositions, scored by the
/// total chain distance over edges (ties: max distance, then lexicographic).
pub fn choose_ordering(graph: &LatticeGraph) -> Vec<usize> {
    let n = graph.num_sites();
    let min_deg = (0..n).map(|s| graph.degree(s)).min().unwrap_or(0);
    let starts: Vec<usize> = (0..n).filter(|&s| graph.degree(s) == min_deg).collect();
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for start in starts {
        let mut order = reverse_cuthill_mckee(graph, start);
        refine_ordering(graph, &mut order);
        let (total, max) = ordering_cost(graph, &order);
        let better = match &best {
            None => true,
            Some((bt, bm, bo)) => (total, max, &order) < (*bt, *bm, bo),
        };
        if better {
            best = Some((total, max, order));
        }
    }
    best.map(|(_, _, o)| o).unwrap_or_default()
}

/// `(Σ |Δpos|, max |Δpos|)` over edges.
pub fn ordering_cost(graph: &LatticeGraph, order: &[usize]) -> (usize, usize) {
    let mut pos = vec![0; order.len()];
    for (p, &s) in order.iter().enumerate() {
        pos[s] = p;
    }
    graph.edges().iter().fold((0, 0), |(t, m), &(i, j)| {
        let d = pos[i].abs_diff(pos[j]);
        (t + d, m.max(d))
    })
}

fn reverse_cuthill_mckee(graph: &LatticeGraph, start: usize) -> Vec<usize> {
    let n = graph.num_sites();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = std::iter::once(start).chain(0..n);
    while order.len() < n {
        let root = roots.find(|&r| !seen[r]).expect("unvisited site");
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut next: Vec<usize> = graph.neighbors(u).iter().copied().filter(|&v| !seen[v]).collect();
            next.sort_by_key(|&v| (graph.degree(v), v));
            for v in next {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    order.reverse();
    order
}

fn refine_ordering(graph: &LatticeGraph, order: &mut [usize]) {
    let mut cost = ordering_cost(graph, order);
    loop {
        let mut improved = false;
        for p in 0..order.len().saturating_sub(1) {
            order.swap(p, p + 1);
            let c = ordering_cost(graph, order);
            if c < cost {
                cost = c;
                improved = true;
            } else {
                order.swap(p, p + 1);
            }
        }
        if !improved {
            break;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleDiagnostics {
    pub n: usize,
    pub max_bond_dim: usize,
    pub cycle_truncation_weight: f64,
}

#[derive(Clone, Debug)]
pub struct MpsRun {
    pub record: TrajectoryRecord,
    pub diagnostics: Vec<CycleDiagnostics>,
    pub ordering: Vec<usize>,
}

/// Writes `n,max_bond_dim,cycle_truncation_weight`.
pub fn write_diagnostics_csv<W: std::io::Write>(out: W, diagnostics: &[CycleDiagnostics]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for d in diagnostics {
        w.serialize(d)?;
    }
    w.flush()?;
    Ok(())
}

/// MPS trajectory with the chain ordering from [`choose_ordering`].
pub fn run_trajectory(
    graph: &LatticeGraph,
    params: &FloquetParams,
    init: &InitialStateSpec,
    config: MpsConfig,
) -> Result<MpsRun> {
    run_trajectory_with_ordering(graph, params, init, config, &choose_ordering(graph))
}

pub fn run_trajectory_with_ordering(
    graph: &LatticeGraph,
    params: &FloquetParams,
    init: &InitialStateSpec,
    config: MpsConfig,
    ordering: &[usize],
) -> Result<MpsRun> {
    let phases = init.phases_for(graph.num_sites());
    let mut state = MpsState::product(&phases, ordering, config)?;
    let program = build_program(params, graph);
    let mut record = TrajectoryRecord::with_y(graph.num_sites());
    let mut diagnostics = Vec::with_capacity(params.n_cycles + 1);
    for n in 0..=params.n_cycles {
        let weight = if n > 0 { state.apply_program(&program)? } else { 0.0 };
        let (x, y) = state.transverse_magnetizations();
        record.push_step(x, Some(y));
        diagnostics.push(CycleDiagnostics { n, max_bond_dim: state.max_bond_dim(), cycle_truncation_weight: weight });
    }
    Ok(MpsRun { record, diagnostics, ordering: ordering.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::rxxz_matrix;
    use crate::lattice::{build_heavy_hex, load_edge_list, SizeClass};
    use crate::statevector::StateVector;

    fn exact() -> MpsConfig {
        MpsConfig::new(1024, 0.0)
    }

    fn cnot_h() -> Mat4 {
        // (H ⊗ I) followed by CNOT(a -> b), basis 2 s_a + s_b
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = |x: f64| C64::new(x * s, 0.0);
        let z = ZERO;
        [[h(1.0), z, h(1.0), z], [z, h(1.0), z, h(1.0)], [z, h(1.0), z, h(-1.0)], [h(1.0), z, h(-1.0), z]]
    }

    #[test]
    fn product_state_properties() {
        let phases = [0.3, 1.1, 2.5, 4.0];
        let mps = MpsState::product(&phases, &[2, 0, 3, 1], exact()).unwrap();
        assert!(mps.bond_dims().iter().all(|&d| d == 1));
        let (x, y) = mps.transverse_magnetizations();
        for j in 0..4 {
            assert!((x[j] - phases[j].cos()).abs() < 1e-14 && (y[j] - phases[j].sin()).abs() < 1e-14);
        }
        assert!(MpsState::product(&phases, &[0, 0, 1, 2], exact()).is_err());
        assert!(MpsState::product(&phases, &[0, 1, 2], exact()).is_err());
    }

    #[test]
    fn ferro_tensors_identical() {
        let mps = MpsState::product(&[0.0; 5], &[0, 1, 2, 3, 4], exact()).unwrap();
        let first = mps.site_tensor(0);
        for j in 1..5 {
            assert_eq!(mps.site_tensor(j), first);
        }
    }

    #[test]
    fn bell_pair_has_bond_two() {
        let s = 0.0f64;
        let mut mps = MpsState::product(&[s, s], &[0, 1], exact()).unwrap();
        // start from |00>: rotate |+> back with H then apply H+CNOT
        let hd = {
            let v = std::f64::consts::FRAC_1_SQRT_2;
            [[C64::new(v, 0.0), C64::new(v, 0.0)], [C64::new(v, 0.0), C64::new(-v, 0.0)]]
        };
        mps.apply_one(0, &hd);
        mps.apply_one(1, &hd);
        mps.apply_two(0, 1, &cnot_h()).unwrap();
        assert_eq!(mps.bond_dims(), vec![2]);
        assert_eq!(mps.cumulative_truncation(), 0.0);
        assert!(mps.expect_pauli(Pauli::X, 0).abs() < 1e-14);
    }

    #[test]
    fn identity_gate_is_exact_noop() {
        let phases = [0.2, 0.9, 1.6];
        let mut mps = MpsState::product(&phases, &[0, 1, 2], MpsConfig::new(8, 1e-10)).unwrap();
        let before = mps.to_amplitudes().unwrap();
        mps.apply_two(0, 2, &rxxz_matrix(0.0, 0.0)).unwrap();
        let after = mps.to_amplitudes().unwrap();
        for (a, b) in before.iter().zip(&after) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(mps.cumulative_truncation() < 1e-28);
    }

    #[test]
    fn long_range_gate_matches_dense() {
        let phases = [0.1, 0.7, 1.9, 2.8, 3.3, 4.1, 5.0];
        let order: Vec<usize> = (0..7).collect();
        let mut mps = MpsState::product(&phases, &order, exact()).unwrap();
        let mut sv = StateVector::product(&phases, 26).unwrap();
        let g = cnot_h();
        for (a, b) in [(0, 5), (6, 1), (2, 3), (4, 0)] {
            mps.apply_two(a, b, &g).unwrap();
            sv.apply_two(a, b, &g);
        }
        let dense = mps.to_amplitudes().unwrap();
        for (x, y) in dense.iter().zip(sv.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }
        assert!((mps.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn center_moves_preserve_state() {
        let phases = [0.4, 1.0, 2.0, 3.0, 5.5];
        let mut mps = MpsState::product(&phases, &[4, 2, 0, 1, 3], exact()).unwrap();
        for (a, b) in [(0, 1), (2, 3), (1, 4), (0, 3)] {
            mps.apply_two(a, b, &rxxz_matrix(0.7, -0.4)).unwrap();
        }
        let reference = mps.transverse_magnetizations();
        for target in [4, 0, 2] {
            mps.move_center(target);
            let now = mps.transverse_magnetizations();
            for j in 0..5 {
                assert!((now.0[j] - reference.0[j]).abs() < 1e-12);
                assert!((now.1[j] - reference.1[j]).abs() < 1e-12);
            }
        }
        mps.canonicalize();
        assert!((mps.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn truncation_policy() {
        let s = [0.8, 0.5, 0.3, 1e-6, 1e-9];
        assert_eq!(truncation_rank(&s, MpsConfig::new(10, 1e-10)), (5, 0.0));
        let total: f64 = s.iter().map(|v| v * v).sum();
        let (k, w) = truncation_rank(&s, MpsConfig::new(10, 1e-8));
        assert_eq!(k, 4);
        assert!((w - 1e-18 / total).abs() < 1e-30);
        let (k, w) = truncation_rank(&s, MpsConfig::new(2, 0.0));
        assert_eq!(k, 2);
        assert!((w - (0.09 + 1e-12 + 1e-18) / total).abs() < 1e-15);
        assert_eq!(truncation_rank(&[1.0, 0.0], MpsConfig::new(4, 0.0)).0, 1);
    }

    #[test]
    fn ordering_on_path_is_monotone() {
        let g = load_edge_list("0 1\n1 2\n2 3\n3 4\n").unwrap();
        let order = choose_ordering(&g);
        assert_eq!(ordering_cost(&g, &order), (4, 1));
    }

    #[test]
    fn ordering_l19_bandwidth() {
        let g = build_heavy_hex(SizeClass::L19).unwrap();
        let order = choose_ordering(&g);
        let (_, max) = ordering_cost(&g, &order);
        assert!(max <= 6, "max chain distance {max}");
        assert_eq!(order, choose_ordering(&g));
    }
}
