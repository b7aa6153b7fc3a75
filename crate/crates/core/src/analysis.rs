//! Synchronization observables: spatial statistics, complex magnetization
//! phases, Kuramoto order parameters (exact, Hilbert proxy and local) and
//! chimera maps.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeGraph;
use crate::record::TrajectoryRecord;

/// Moduli at or below this have no defined phase.
pub const PHASE_EPS: f64 = 1e-12;
/// Minimum series length for the Hilbert construction.
pub const MIN_HILBERT_LEN: usize = 8;
/// Steps at each end of a Hilbert series that are edge-affected.
pub const HILBERT_EDGE: usize = 2;
/// Default late-time window for local maps.
pub const DEFAULT_WINDOW: TimeWindow = TimeWindow { start: 20, end: 25 };

/// Inclusive step window `[start, end]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeWindow {
    pub start: usize,
    pub end: usize,
}

impl TimeWindow {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    /// Steps of the window that exist in a record with `num_steps` steps.
    pub fn steps(&self, num_steps: usize) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end.min(num_steps.saturating_sub(1))
    }

    /// The last `fraction` of a record, at least one step.
    pub fn tail(num_steps: usize, fraction: f64) -> Self {
        let count = ((num_steps as f64 * fraction).round() as usize).max(1);
        Self { start: num_steps.saturating_sub(count), end: num_steps.saturating_sub(1) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseVariant {
    /// Phases of `<X> + i<Y>`.
    Exact,
    /// Hilbert phases of the `<X>` series.
    Proxy,
}

fn check_subset(record: &TrajectoryRecord, subset: &[usize]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::InvalidInput("site subset is empty".into()));
    }
    if let Some(&bad) = subset.iter().find(|&&j| j >= record.num_sites()) {
        return Err(Error::InvalidInput(format!("site {bad} outside record of {} sites", record.num_sites())));
    }
    Ok(())
}

/// Mean and population standard deviation.
pub fn mean_std(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let v: Vec<f64> = values.into_iter().collect();
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// `(X̄, X_std)` over `subset` at step `n`.
pub fn spatial_stats(record: &TrajectoryRecord, subset: &[usize], n: usize) -> Result<(f64, f64)> {
    check_subset(record, subset)?;
    let row = &record.x[n];
    Ok(mean_std(subset.iter().map(|&j| row[j])))
}

/// Complex local magnetization `R e^{iΘ}`; `phase` is `None` when `R` vanishes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarSample {
    pub amplitude: f64,
    pub phase: Option<f64>,
}

impl PolarSample {
    pub fn from_xy(x: f64, y: f64) -> Self {
        let w = C64::new(x, y);
        let amplitude = w.norm();
        // arg lies in [-π, π]; fold -π onto π
        let phase = (amplitude > PHASE_EPS).then(|| {
            let a = w.arg();
            if a <= -PI {
                PI
            } else {
                a
            }
        });
        Self { amplitude, phase }
    }
}

pub fn complex_mag(record: &TrajectoryRecord, n: usize, j: usize) -> Result<PolarSample> {
    let y = record.y_table()?;
    Ok(PolarSample::from_xy(record.x[n][j], y[n][j]))
}

/// Kuramoto order parameter with the count of excluded (undefined) phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kuramoto {
    pub kappa: f64,
    pub excluded: usize,
}

/// `|mean e^{iΘ}|` over the defined phases.
pub fn kuramoto(phases: &[Option<f64>]) -> Result<Kuramoto> {
    let defined: Vec<f64> = phases.iter().flatten().copied().collect();
    if defined.is_empty() {
        return Err(Error::AllPhasesUndefined);
    }
    let sum: C64 = defined.iter().map(|&t| C64::from_polar(1.0, t)).sum();
    let kappa = (sum.norm() / defined.len() as f64).min(1.0);
    Ok(Kuramoto { kappa, excluded: phases.len() - defined.len() })
}

/// Analytic-signal samples of one series.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticSignal {
    pub amplitude: Vec<f64>,
    pub phase: Vec<Option<f64>>,
    /// `true` on the first and last [`HILBERT_EDGE`] steps.
    pub edge: Vec<bool>,
}

/// Hilbert phase of a real series: remove the mean, zero the negative
/// frequencies, double the positive ones (DC and Nyquist kept) and invert.
pub fn hilbert_phase(series: &[f64]) -> Result<AnalyticSignal> {
    let n = series.len();
    if n < MIN_HILBERT_LEN {
        return Err(Error::SeriesTooShort { len: n, min: MIN_HILBERT_LEN });
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<C64> = series.iter().map(|&v| C64::new(v - mean, 0.0)).collect();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, v) in buf.iter_mut().enumerate() {
        let weight = if k == 0 || (n % 2 == 0 && k == n / 2) {
            1.0
        } else if k < n.div_ceil(2) {
            2.0
        } else {
            0.0
        };
        *v *= weight;
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let samples: Vec<PolarSample> =
        buf.iter().map(|v| *v / n as f64).map(|w| PolarSample::from_xy(w.re, w.im)).collect();
    Ok(AnalyticSignal {
        amplitude: samples.iter().map(|s| s.amplitude).collect(),
        phase: samples.iter().map(|s| s.phase).collect(),
        edge: (0..n).map(|i| i < HILBERT_EDGE || i + HILBERT_EDGE >= n).collect(),
    })
}

/// Per-step, per-site phases for the chosen variant: `[n][j]`.
pub fn phase_table(record: &TrajectoryRecord, variant: PhaseVariant) -> Result<Vec<Vec<Option<f64>>>> {
    match variant {
        PhaseVariant::Exact => {
            let y = record.y_table()?;
            Ok(record
                .x
                .iter()
                .zip(y)
                .map(|(xr, yr)| xr.iter().zip(yr).map(|(&x, &y)| PolarSample::from_xy(x, y).phase).collect())
                .collect())
        }
        PhaseVariant::Proxy => {
            let per_site = (0..record.num_sites())
                .map(|j| hilbert_phase(&record.x_series(j)).map(|a| a.phase))
                .collect::<Result<Vec<_>>>()?;
            Ok((0..record.num_steps()).map(|n| per_site.iter().map(|p| p[n]).collect()).collect())
        }
    }
}

fn kappa_series_from_phases(phases: &[Vec<Option<f64>>], subset: &[usize]) -> Vec<f64> {
    phases
        .iter()
        .map(|row| {
            let sel: Vec<Option<f64>> = subset.iter().map(|&j| row[j]).collect();
            // a step with no defined phase carries no coherence
            kuramoto(&sel).map_or(0.0, |k| k.kappa)
        })
        .collect()
}

/// `κ(t)` over `subset` from `<X> + i<Y>`.
pub fn exact_kappa(record: &TrajectoryRecord, subset: &[usize]) -> Result<Vec<f64>> {
    check_subset(record, subset)?;
    Ok(kappa_series_from_phases(&phase_table(record, PhaseVariant::Exact)?, subset))
}

/// `κ̃(t)` over `subset` from Hilbert phases of `<X>` alone.
pub fn proxy_kappa(record: &TrajectoryRecord, subset: &[usize]) -> Result<Vec<f64>> {
    check_subset(record, subset)?;
    Ok(kappa_series_from_phases(&phase_table(record, PhaseVariant::Proxy)?, subset))
}

/// `⟨κ_j⟩_𝒯` on neighborhoods of radius `k` around every site.
pub fn local_kappa_map(
    record: &TrajectoryRecord,
    graph: &LatticeGraph,
    k: usize,
    window: TimeWindow,
    variant: PhaseVariant,
) -> Result<Vec<f64>> {
    if graph.num_sites() != record.num_sites() {
        return Err(Error::InvalidInput("graph and record sizes differ".into()));
    }
    let steps = window.steps(record.num_steps());
    if steps.is_empty() {
        return Err(Error::InvalidInput(format!(
            "window [{}, {}] has no steps in a record of {} steps",
            window.start,
            window.end,
            record.num_steps()
        )));
    }
    let phases = phase_table(record, variant)?;
    (0..graph.num_sites())
        .map(|j| {
            let members = graph.neighborhood(j, k)?.members;
            let series = kappa_series_from_phases(&phases[steps.clone()], &members);
            Ok(series.iter().sum::<f64>() / series.len() as f64)
        })
        .collect()
}

/// `(R_avg, R_std)` over `subset` at step `n`.
pub fn amplitude_stats(record: &TrajectoryRecord, subset: &[usize], n: usize) -> Result<(f64, f64)> {
    check_subset(record, subset)?;
    let y = record.y_table()?;
    Ok(mean_std(subset.iter().map(|&j| C64::new(record.x[n][j], y[n][j]).norm())))
}

/// Mean of `series` over the window's steps.
pub fn window_mean(series: &[f64], window: TimeWindow) -> f64 {
    let steps = window.steps(series.len());
    let count = steps.clone().count().max(1);
    series[steps].iter().sum::<f64>() / count as f64
}

/// Per-step synchronization observables over one site subset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyncReport {
    pub subset: Vec<usize>,
    pub kappa: Option<Vec<f64>>,
    pub kappa_tilde: Option<Vec<f64>>,
    pub xbar: Vec<f64>,
    pub x_std: Vec<f64>,
    pub r_avg: Option<Vec<f64>>,
    pub r_std: Option<Vec<f64>>,
    pub local_map: Option<Vec<f64>>,
    pub window: TimeWindow,
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub neighborhood_radius: usize,
    pub window: TimeWindow,
    pub map_variant: PhaseVariant,
    pub with_local_map: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { neighborhood_radius: 4, window: DEFAULT_WINDOW, map_variant: PhaseVariant::Exact, with_local_map: true }
    }
}

impl SyncReport {
    /// Everything computable from the record: exact quantities need Y, the
    /// proxy needs at least [`MIN_HILBERT_LEN`] steps.
    pub fn compute(
        record: &TrajectoryRecord,
        subset: &[usize],
        graph: Option<&LatticeGraph>,
        options: &ReportOptions,
    ) -> Result<Self> {
        check_subset(record, subset)?;
        let steps = record.num_steps();
        let (xbar, x_std): (Vec<f64>, Vec<f64>) =
            (0..steps).map(|n| spatial_stats(record, subset, n)).collect::<Result<Vec<_>>>()?.into_iter().unzip();
        let kappa = record.has_y().then(|| exact_kappa(record, subset)).transpose()?;
        let kappa_tilde = (steps >= MIN_HILBERT_LEN).then(|| proxy_kappa(record, subset)).transpose()?;
        let (r_avg, r_std) = if record.has_y() {
            let (a, s): (Vec<f64>, Vec<f64>) = (0..steps)
                .map(|n| amplitude_stats(record, subset, n))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip();
            (Some(a), Some(s))
        } else {
            (None, None)
        };
        let variant = if record.has_y() { options.map_variant } else { PhaseVariant::Proxy };
        let local_map = match graph {
            Some(g) if options.with_local_map && (variant == PhaseVariant::Exact || steps >= MIN_HILBERT_LEN) => {
                Some(local_kappa_map(record, g, options.neighborhood_radius, options.window, variant)?)
            }
            _ => None,
        };
        Ok(Self { subset: subset.to_vec(), kappa, kappa_tilde, xbar, x_std, r_avg, r_std, local_map, window: options.window })
    }

    /// Writes `n,kappa,kappa_tilde,xbar,x_std,r_avg,r_std` (empty when absent).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "kappa", "kappa_tilde", "xbar", "x_std", "r_avg", "r_std"])?;
        let cell = |v: &Option<Vec<f64>>, n: usize| v.as_ref().map_or(String::new(), |s| s[n].to_string());
        for n in 0..self.xbar.len() {
            w.write_record([
                n.to_string(),
                cell(&self.kappa, n),
                cell(&self.kappa_tilde, n),
                self.xbar[n].to_string(),
                self.x_std[n].to_string(),
                cell(&self.r_avg, n),
                cell(&self.r_std, n),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Writes `j,x_coord,y_coord,kappa_local`.
pub fn write_local_map_csv<W: Write>(out: W, graph: &LatticeGraph, map: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["j", "x_coord", "y_coord", "kappa_local"])?;
    for (j, (&(x, y), v)) in graph.coords().iter().zip(map).enumerate() {
        w.write_record([j.to_string(), x.to_string(), y.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
