use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use floqsync::analysis::{PhaseVariant, ReportOptions, TimeWindow};
use floqsync::config::ExperimentConfig;
use floqsync::lattice::{build_heavy_hex, load_edge_list, LatticeGraph, SizeClass};
use floqsync::mitigation::NoiseModel;
use floqsync::record::TrajectoryRecord;
use floqsync::runner::{self, write_atomic};
use floqsync::snapshot::snapshot_svg;
use floqsync::Result;

#[derive(Parser)]
#[command(name = "floqsync", version, about = "Floquet XXZ synchronization on heavy-hex lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LatticeArgs {
    /// Built-in heavy-hex size: L19, L28, L46 or L156.
    #[arg(long)]
    size: Option<SizeClass>,
    /// Edge-list file, one `a b` pair per line.
    #[arg(long)]
    edge_list: Option<PathBuf>,
}

impl LatticeArgs {
    fn graph(&self) -> Result<LatticeGraph> {
        match (&self.size, &self.edge_list) {
            (Some(s), _) => build_heavy_hex(*s),
            (_, Some(p)) => load_edge_list(&fs::read_to_string(p)?),
            _ => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edges,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a lattice with its layer coloring.
    Lattice {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one experiment config.
    Run {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Final-step κ over a grid of phi_max values (multiples of π).
    Sweep {
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<f64>,
        /// Output CSV; `<output_dir>/sweep.csv` when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the sync report and local map from a trajectory CSV.
    Analyze {
        #[arg(long)]
        trajectory: PathBuf,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render the in-plane magnetization at one step as SVG.
    Snapshot {
        #[arg(long)]
        trajectory: PathBuf,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        step: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply shot noise and depolarizing attenuation, then mitigate.
    Emulate {
        /// Ideal trajectory CSV.
        #[arg(long)]
        trajectory: PathBuf,
        /// Ideal reference trajectory CSV (ferromagnetic start, no Z field).
        #[arg(long)]
        reference: PathBuf,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = floqsync::mitigation::DEVICE_SHOTS)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sites averaged into the reference factor; all when omitted.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct AnalysisArgs {
    /// Site subset for global quantities; all when omitted.
    #[arg(long, value_delimiter = ',')]
    subset: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    radius: usize,
    /// Averaging window `start,end` (inclusive steps).
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [20, 25])]
    window: Vec<usize>,
    #[arg(long, value_enum, default_value = "exact")]
    variant: Variant,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Exact,
    Proxy,
}

fn subset_or_all(subset: &[usize], n: usize) -> Vec<usize> {
    if subset.is_empty() {
        (0..n).collect()
    } else {
        subset.to_vec()
    }
}

fn read_trajectory(path: &Path) -> Result<TrajectoryRecord> {
    TrajectoryRecord::read_csv(fs::File::open(path)?)
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Lattice { lattice, format, out } => {
            let g = lattice.graph()?;
            let text = match format {
                GraphFormat::Edges => g.to_edge_list(),
                GraphFormat::Json => format!("{}\n", serde_json::to_string_pretty(&g.to_json())?),
            };
            match out {
                Some(p) => fs::write(p, text)?,
                None => print!("{text}"),
            }
        }
        Command::Run { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let dir = out.unwrap_or_else(|| cfg.output_dir.clone());
            let summary = runner::run(&cfg, &dir)?;
            println!("wrote {} files to {}", summary.files.len(), summary.dir.display());
            if let Some(k) = summary.report.kappa.as_ref().and_then(|k| k.last()) {
                println!("final kappa = {k:.6}");
            }
        }
        Command::Sweep { config, grid, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let rows = runner::sweep_phimax(&cfg, &grid)?;
            let path = out.unwrap_or_else(|| cfg.output_dir.join("sweep.csv"));
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            write_atomic(&path, |b| runner::write_sweep_csv(b, &rows))?;
            for r in rows {
                println!("phi_max = {}π  kappa = {:.6}", r.phi_max_pi, r.kappa_final);
            }
        }
        Command::Analyze { trajectory, lattice, analysis, out } => {
            let rec = read_trajectory(&trajectory)?;
            let g = lattice.graph()?;
            let options = ReportOptions {
                neighborhood_radius: analysis.radius,
                window: TimeWindow::new(analysis.window[0], analysis.window[1]),
                map_variant: match analysis.variant {
                    Variant::Exact => PhaseVariant::Exact,
                    Variant::Proxy => PhaseVariant::Proxy,
                },
                with_local_map: true,
            };
            runner::analyze(&rec, &g, &subset_or_all(&analysis.subset, g.num_sites()), &options, &out)?;
            println!("wrote reports to {}", out.display());
        }
        Command::Snapshot { trajectory, lattice, step, out } => {
            let rec = read_trajectory(&trajectory)?;
            let svg = snapshot_svg(&rec, &lattice.graph()?, step)?;
            write_atomic(&out, |b| {
                b.extend_from_slice(svg.as_bytes());
                Ok(())
            })?;
        }
        Command::Emulate { trajectory, reference, q, shots, seed, subset, out } => {
            let ideal = read_trajectory(&trajectory)?;
            let reference = read_trajectory(&reference)?;
            let model = NoiseModel::new(q, shots, seed)?;
            let m = runner::emulate_and_mitigate(&ideal, &reference, model, &subset_or_all(&subset, ideal.num_sites()))?;
            fs::create_dir_all(&out)?;
            write_atomic(&out.join("noisy.csv"), |b| m.noisy.write_uncertainty_csv(b))?;
            write_atomic(&out.join("factors.csv"), |b| runner::write_factors_csv(b, &m.factors))?;
            write_atomic(&out.join("mitigated.csv"), |b| m.mitigated.write_uncertainty_csv(b))?;
            println!("wrote noisy.csv, factors.csv, mitigated.csv to {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
