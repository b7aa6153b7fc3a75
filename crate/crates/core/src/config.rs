//! Experiment configuration (TOML). Angles and `phi_max` are multiples of π.
//!
//! ```toml
//! output_dir = "out/l19-isotropic"   # default "out"
//!
//! [lattice]
//! size = "L19"                        # L19 | L28 | L46 | L156, or edge_list = "file"
//!
//! [floquet]
//! theta_xx = -0.25
//! theta_zz = -0.25
//! theta_z = 0.25
//! n_cycles = 100
//!
//! [initial]
//! phi_max = 1.0
//! seed = 1234
//!
//! [backend]
//! kind = "statevector"                # statevector | mps
//! chi = 128                           # mps only, default 128
//! cutoff = 1e-10                      # mps only, default 1e-10
//! max_qubits = 26                     # statevector only, at most 28
//! entropy_subsystem = [6, 7, 8]       # statevector only, optional
//!
//! [noise]                             # optional
//! q = 0.95
//! shots = 8192
//! seed = 7
//!
//! [analysis]                          # optional, defaults shown
//! subset = []                         # empty selects every site
//! neighborhood_radius = 4
//! window = [20, 25]
//! variant = "exact"                   # exact | proxy
//! ```

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{PhaseVariant, ReportOptions, TimeWindow, DEFAULT_WINDOW};
use crate::circuit::{FloquetParams, InitialStateSpec};
use crate::error::{Error, Result};
use crate::lattice::{build_heavy_hex, load_edge_list, LatticeGraph, SizeClass};
use crate::mitigation::NoiseModel;
use crate::mps::{MpsConfig, DEFAULT_CUTOFF};
use crate::statevector::{DEFAULT_MAX_QUBITS, OVERRIDE_MAX_QUBITS};

const REQUIRED: [&str; 8] = [
    "lattice",
    "floquet.theta_xx",
    "floquet.theta_zz",
    "floquet.theta_z",
    "floquet.n_cycles",
    "initial.phi_max",
    "initial.seed",
    "backend.kind",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    pub lattice: LatticeSection,
    pub floquet: FloquetSection,
    pub initial: InitialSection,
    pub backend: BackendSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSection>,
    #[serde(default)]
    pub analysis: AnalysisSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_list: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloquetSection {
    pub theta_xx: f64,
    pub theta_zz: f64,
    pub theta_z: f64,
    pub n_cycles: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    pub phi_max: f64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Statevector,
    Mps,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackendSection {
    pub kind: BackendKind,
    #[serde(default = "default_chi")]
    pub chi: usize,
    #[serde(default = "default_cutoff")]
    pub cutoff: f64,
    #[serde(default = "default_max_qubits")]
    pub max_qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy_subsystem: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSection {
    pub q: f64,
    pub shots: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    #[serde(default)]
    pub subset: Vec<usize>,
    #[serde(default = "default_radius")]
    pub neighborhood_radius: usize,
    #[serde(default = "default_window")]
    pub window: [usize; 2],
    #[serde(default = "default_variant")]
    pub variant: PhaseVariant,
}

impl Default for AnalysisSection {
    fn default() -> Self {
        Self { subset: Vec::new(), neighborhood_radius: default_radius(), window: default_window(), variant: default_variant() }
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}
fn default_chi() -> usize {
    128
}
fn default_cutoff() -> f64 {
    DEFAULT_CUTOFF
}
fn default_max_qubits() -> usize {
    DEFAULT_MAX_QUBITS
}
fn default_radius() -> usize {
    4
}
fn default_window() -> [usize; 2] {
    [DEFAULT_WINDOW.start, DEFAULT_WINDOW.end]
}
fn default_variant() -> PhaseVariant {
    PhaseVariant::Exact
}

fn has_key(table: &toml::Table, dotted: &str) -> bool {
    let mut parts = dotted.split('.');
    let mut cur = match parts.next().and_then(|k| table.get(k)) {
        Some(v) => v,
        None => return false,
    };
    for p in parts {
        match cur.get(p) {
            Some(v) => cur = v,
            None => return false,
        }
    }
    true
}

impl ExperimentConfig {
    /// Parses and validates; every missing required key is reported at once.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        let missing: Vec<&str> = REQUIRED.iter().copied().filter(|k| !has_key(&table, k)).collect();
        if !missing.is_empty() {
            return Err(Error::Config(format!("missing required keys: {}", missing.join(", "))));
        }
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Loads a file; a relative `edge_list` resolves against the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::from_toml_str(&text)?;
        if let (Some(el), Some(dir)) = (cfg.lattice.edge_list.as_mut(), path.parent()) {
            if el.is_relative() {
                *el = dir.join(&*el);
            }
        }
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        match (&self.lattice.size, &self.lattice.edge_list) {
            (Some(s), None) => {
                if let Err(e) = s.parse::<SizeClass>() {
                    problems.push(e.to_string());
                }
            }
            (None, Some(_)) => {}
            _ => problems.push("lattice needs exactly one of size, edge_list".into()),
        }
        let f = &self.floquet;
        if ![f.theta_xx, f.theta_zz, f.theta_z, self.initial.phi_max].iter().all(|v| v.is_finite()) {
            problems.push("angles must be finite".into());
        }
        if self.initial.phi_max < 0.0 {
            problems.push("initial.phi_max must be nonnegative".into());
        }
        let b = &self.backend;
        if b.chi == 0 {
            problems.push("backend.chi must be at least 1".into());
        }
        if !(b.cutoff >= 0.0 && b.cutoff < 1.0) {
            problems.push("backend.cutoff must lie in [0, 1)".into());
        }
        if b.max_qubits > OVERRIDE_MAX_QUBITS {
            problems.push(format!("backend.max_qubits above {OVERRIDE_MAX_QUBITS}"));
        }
        if b.kind == BackendKind::Mps && b.entropy_subsystem.is_some() {
            problems.push("backend.entropy_subsystem is statevector only".into());
        }
        if let Some(n) = &self.noise {
            if let Err(e) = NoiseModel::new(n.q, n.shots, n.seed) {
                problems.push(e.to_string());
            }
        }
        let [s, e] = self.analysis.window;
        if s > e {
            problems.push(format!("analysis.window [{s}, {e}] is reversed"));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems.join("; ")))
        }
    }

    pub fn graph(&self) -> Result<LatticeGraph> {
        match (&self.lattice.size, &self.lattice.edge_list) {
            (Some(s), _) => build_heavy_hex(s.parse()?),
            (None, Some(p)) => load_edge_list(&std::fs::read_to_string(p)?),
            (None, None) => Err(Error::Config("lattice needs size or edge_list".into())),
        }
    }

    pub fn params(&self) -> FloquetParams {
        let f = &self.floquet;
        FloquetParams::from_pi_multiples(f.theta_xx, f.theta_zz, f.theta_z, f.n_cycles)
    }

    pub fn initial_state(&self) -> InitialStateSpec {
        InitialStateSpec::new(self.initial.phi_max * PI, self.initial.seed)
    }

    pub fn mps_config(&self) -> MpsConfig {
        MpsConfig::new(self.backend.chi, self.backend.cutoff)
    }

    pub fn noise_model(&self) -> Option<NoiseModel> {
        self.noise.map(|n| NoiseModel { q: n.q, shots: n.shots, seed: n.seed })
    }

    /// Analysis subset with the empty list expanded to every site.
    pub fn subset(&self, num_sites: usize) -> Result<Vec<usize>> {
        let s = &self.analysis.subset;
        if s.is_empty() {
            return Ok((0..num_sites).collect());
        }
        if let Some(&bad) = s.iter().find(|&&j| j >= num_sites) {
            return Err(Error::Config(format!("analysis.subset site {bad} outside lattice of {num_sites}")));
        }
        Ok(s.clone())
    }

    pub fn report_options(&self) -> ReportOptions {
        let [start, end] = self.analysis.window;
        ReportOptions {
            neighborhood_radius: self.analysis.neighborhood_radius,
            window: TimeWindow::new(start, end),
            map_variant: self.analysis.variant,
            with_local_map: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[lattice]
size = "L19"
[floquet]
theta_xx = -0.25
theta_zz = -0.25
theta_z = 0.25
n_cycles = 5
[initial]
phi_max = 1.0
seed = 3
[backend]
kind = "statevector"
"#;

    #[test]
    fn empty_config_lists_every_missing_key() {
        let err = ExperimentConfig::from_toml_str("").unwrap_err().to_string();
        for key in REQUIRED {
            assert!(err.contains(key), "{err} lacks {key}");
        }
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = ExperimentConfig::from_toml_str(MINIMAL).unwrap();
        assert_eq!(cfg.backend.chi, 128);
        assert_eq!(cfg.analysis.window, [20, 25]);
        assert_eq!(cfg.output_dir, PathBuf::from("out"));
        assert!((cfg.params().theta_xx + 0.25 * PI).abs() < 1e-15);
        assert_eq!(cfg.subset(19).unwrap().len(), 19);
        let again = ExperimentConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn bad_values_rejected() {
        let unknown = MINIMAL.replace("seed = 3", "seed = 3\nsed = 4");
        assert!(ExperimentConfig::from_toml_str(&unknown).is_err());
        let size = MINIMAL.replace("L19", "L20");
        assert!(ExperimentConfig::from_toml_str(&size).unwrap_err().to_string().contains("unsupported"));
        let noise = format!("{MINIMAL}[noise]\nq = 1.5\nshots = 10\nseed = 1\n");
        assert!(ExperimentConfig::from_toml_str(&noise).is_err());
        let mps_entropy = MINIMAL.replace("kind = \"statevector\"", "kind = \"mps\"\nentropy_subsystem = [0]");
        assert!(ExperimentConfig::from_toml_str(&mps_entropy).is_err());
    }
}
