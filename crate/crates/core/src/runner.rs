//! Config-driven runs and their on-disk bundles.
//!
//! Files written by [`run`]:
//! - `trajectory.csv`: `n,j,x,y`
//! - `sync_report.csv`: `n,kappa,kappa_tilde,xbar,x_std,r_avg,r_std`
//! - `local_map.csv`: `j,x_coord,y_coord,kappa_local` (when the window has steps)
//! - `entropy.csv`: `n,entropy_bits` (statevector with a subsystem)
//! - `diagnostics.csv`: `n,max_bond_dim,cycle_truncation_weight` (mps)
//! - `noisy.csv`, `mitigated.csv`: `n,j,x,stderr,flag`; `factors.csv`: `n,f,stderr,below_floor` (noise)
//! - `config.toml`: the resolved config, rerunnable as is
//! - `manifest.json`: config echo, phases, chain ordering, versions, file list

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::analysis::{write_local_map_csv, ReportOptions, SyncReport};
use crate::circuit::{FloquetParams, InitialStateSpec};
use crate::config::{BackendKind, ExperimentConfig};
use crate::error::{Error, Result};
use crate::lattice::LatticeGraph;
use crate::mitigation::{emulate_measurement, mitigate, reference_factor, MitigationFactors, NoiseModel};
use crate::mps::{self, CycleDiagnostics};
use crate::record::{write_series_csv, TrajectoryRecord};
use crate::statevector::{self, SvOptions};

/// Output of one simulation, independent of backend.
#[derive(Clone, Debug)]
pub struct Simulation {
    pub record: TrajectoryRecord,
    pub entropy: Option<Vec<f64>>,
    pub diagnostics: Option<Vec<CycleDiagnostics>>,
    pub ordering: Option<Vec<usize>>,
}

pub fn simulate(
    cfg: &ExperimentConfig,
    graph: &LatticeGraph,
    params: &FloquetParams,
    init: &InitialStateSpec,
    with_entropy: bool,
) -> Result<Simulation> {
    match cfg.backend.kind {
        BackendKind::Statevector => {
            let options = SvOptions {
                max_qubits: cfg.backend.max_qubits,
                entropy_subsystem: cfg.backend.entropy_subsystem.clone().filter(|_| with_entropy),
            };
            let run = statevector::run_trajectory(graph, params, init, &options)?;
            Ok(Simulation { record: run.record, entropy: run.entropy, diagnostics: None, ordering: None })
        }
        BackendKind::Mps => {
            let run = mps::run_trajectory(graph, params, init, cfg.mps_config())?;
            Ok(Simulation { record: run.record, entropy: None, diagnostics: Some(run.diagnostics), ordering: Some(run.ordering) })
        }
    }
}

/// Writes through a temporary sibling and renames, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    fill(&mut buf)?;
    let name = path.file_name().ok_or_else(|| Error::InvalidInput(format!("not a file path: {}", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    fs::File::create(&tmp)?.write_all(&buf)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Noise pipeline results.
#[derive(Clone, Debug)]
pub struct Mitigated {
    pub noisy: TrajectoryRecord,
    pub factors: MitigationFactors,
    pub mitigated: TrajectoryRecord,
}

/// Emulates the device on `ideal` and on the reference record, then
/// normalizes. The reference uses stream seed `model.seed + 1`.
pub fn emulate_and_mitigate(
    ideal: &TrajectoryRecord,
    reference: &TrajectoryRecord,
    model: NoiseModel,
    subset: &[usize],
) -> Result<Mitigated> {
    let noisy = emulate_measurement(ideal, model.q, model.shots, model.seed)?;
    let ref_noisy = emulate_measurement(reference, model.q, model.shots, model.seed.wrapping_add(1))?;
    let factors = reference_factor(&ref_noisy, subset)?;
    let mitigated = mitigate(&noisy, &factors)?;
    Ok(Mitigated { noisy: noisy.raw, factors, mitigated })
}

pub fn write_factors_csv<W: Write>(out: W, factors: &MitigationFactors) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "f", "stderr", "below_floor"])?;
    for (n, ((f, s), b)) in factors.f.iter().zip(&factors.stderr).zip(&factors.below_floor).enumerate() {
        w.write_record([n.to_string(), f.to_string(), s.to_string(), (*b as u8).to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a ExperimentConfig,
    num_sites: usize,
    num_edges: usize,
    num_layers: usize,
    phases: &'a [f64],
    ordering: Option<&'a [usize]>,
    files: &'a [String],
}

/// Summary of a finished run.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub dir: PathBuf,
    pub files: Vec<String>,
    pub record: TrajectoryRecord,
    pub report: SyncReport,
}

/// Report options with the local map dropped when its window lies past the
/// end of the record.
fn effective_options(cfg: &ExperimentConfig, num_steps: usize) -> ReportOptions {
    let mut opts = cfg.report_options();
    opts.with_local_map = opts.window.start < num_steps;
    opts
}

/// Runs `cfg` and writes its bundle into `out_dir`.
pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunSummary> {
    cfg.validate()?;
    let graph = cfg.graph()?;
    let subset = cfg.subset(graph.num_sites())?;
    let params = cfg.params();
    let init = cfg.initial_state();
    let sim = simulate(cfg, &graph, &params, &init, true)?;
    let report = SyncReport::compute(&sim.record, &subset, Some(&graph), &effective_options(cfg, sim.record.num_steps()))?;

    fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();
    let mut put = |name: &str, fill: &dyn Fn(&mut Vec<u8>) -> Result<()>| -> Result<()> {
        write_atomic(&out_dir.join(name), |b| fill(b))?;
        files.push(name.to_string());
        Ok(())
    };
    put("trajectory.csv", &|b| sim.record.write_csv(b))?;
    put("sync_report.csv", &|b| report.write_csv(b))?;
    if let Some(map) = &report.local_map {
        put("local_map.csv", &|b| write_local_map_csv(b, &graph, map))?;
    }
    if let Some(e) = &sim.entropy {
        put("entropy.csv", &|b| write_series_csv(b, "entropy_bits", e))?;
    }
    if let Some(d) = &sim.diagnostics {
        put("diagnostics.csv", &|b| mps::write_diagnostics_csv(b, d))?;
    }
    if let Some(model) = cfg.noise_model() {
        let reference = simulate(cfg, &graph, &params.reference(), &InitialStateSpec::ferromagnetic(), false)?;
        let m = emulate_and_mitigate(&sim.record, &reference.record, model, &subset)?;
        put("noisy.csv", &|b| m.noisy.write_uncertainty_csv(b))?;
        put("factors.csv", &|b| write_factors_csv(b, &m.factors))?;
        put("mitigated.csv", &|b| m.mitigated.write_uncertainty_csv(b))?;
    }
    put("config.toml", &|b| {
        b.extend_from_slice(cfg.to_toml_string().as_bytes());
        Ok(())
    })?;
    let phases = init.phases_for(graph.num_sites());
    let mut listed = files.clone();
    listed.push("manifest.json".into());
    let manifest = Manifest {
        tool: "floqsync",
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        num_sites: graph.num_sites(),
        num_edges: graph.edges().len(),
        num_layers: graph.num_layers(),
        phases: &phases,
        ordering: sim.ordering.as_deref(),
        files: &listed,
    };
    write_atomic(&out_dir.join("manifest.json"), |b| {
        serde_json::to_writer_pretty(&mut *b, &manifest)?;
        b.push(b'\n');
        Ok(())
    })?;
    Ok(RunSummary { dir: out_dir.to_path_buf(), files: listed, record: sim.record, report })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub phi_max_pi: f64,
    pub kappa_final: f64,
}

/// One run per grid value (multiples of π) with the config's seed throughout,
/// so every grid point scales the same uniform draws.
pub fn sweep_phimax(cfg: &ExperimentConfig, grid: &[f64]) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("phi_max grid is empty".into()));
    }
    let graph = cfg.graph()?;
    let subset = cfg.subset(graph.num_sites())?;
    let params = cfg.params();
    grid.iter()
        .map(|&phi_max_pi| {
            let mut point = cfg.clone();
            point.initial.phi_max = phi_max_pi;
            let sim = simulate(&point, &graph, &params, &point.initial_state(), false)?;
            let kappa = crate::analysis::exact_kappa(&sim.record, &subset)?;
            Ok(SweepRow { phi_max_pi, kappa_final: *kappa.last().expect("at least one step") })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Recomputes the report files from a stored trajectory.
pub fn analyze(
    record: &TrajectoryRecord,
    graph: &LatticeGraph,
    subset: &[usize],
    options: &ReportOptions,
    out_dir: &Path,
) -> Result<SyncReport> {
    if graph.num_sites() != record.num_sites() {
        return Err(Error::InvalidInput(format!(
            "trajectory has {} sites but the lattice has {}",
            record.num_sites(),
            graph.num_sites()
        )));
    }
    let mut opts = *options;
    opts.with_local_map &= opts.window.start < record.num_steps();
    let report = SyncReport::compute(record, subset, Some(graph), &opts)?;
    fs::create_dir_all(out_dir)?;
    write_atomic(&out_dir.join("sync_report.csv"), |b| report.write_csv(b))?;
    if let Some(map) = &report.local_map {
        write_atomic(&out_dir.join("local_map.csv"), |b| write_local_map_csv(b, graph, map))?;
    }
    Ok(report)
}
