//! Finite-shot, globally depolarized measurement emulation and
//! reference-circuit normalization.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::record::TrajectoryRecord;

/// Shot count per circuit on the device.
pub const DEVICE_SHOTS: u64 = 1 << 13;
/// Reference factors below this are not divided by; the step is flagged.
pub const F_FLOOR: f64 = 0.02;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Per-cycle attenuation of traceless single-site observables.
    pub q: f64,
    pub shots: u64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(q: f64, shots: u64, seed: u64) -> Result<Self> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::InvalidInput(format!("attenuation q = {q} outside (0, 1]")));
        }
        if shots == 0 {
            return Err(Error::InvalidInput("shots must be at least 1".into()));
        }
        Ok(Self { q, shots, seed })
    }
}

/// Raw estimates `<X_j(t_n)>_0` with shot standard errors.
#[derive(Clone, Debug, PartialEq)]
pub struct NoisyRecord {
    pub raw: TrajectoryRecord,
    pub model: NoiseModel,
}

/// Standard error of a ±1 estimator, floored at one shot's resolution so
/// saturated estimates keep a nonzero error bar.
pub fn shot_stderr(estimate: f64, shots: u64) -> f64 {
    let n = shots as f64;
    ((1.0 - estimate * estimate).max(0.0) / n).sqrt().max(1.0 / n)
}

/// Samples one binomial count per `(n, j)` from an independent stream.
pub fn emulate_measurement(ideal: &TrajectoryRecord, q: f64, shots: u64, seed: u64) -> Result<NoisyRecord> {
    let model = NoiseModel::new(q, shots, seed)?;
    let mut x = Vec::with_capacity(ideal.num_steps());
    let mut se = Vec::with_capacity(ideal.num_steps());
    for (n, row) in ideal.x.iter().enumerate() {
        let attenuation = q.powi(n as i32);
        let mut xr = Vec::with_capacity(row.len());
        let mut sr = Vec::with_capacity(row.len());
        for (j, &v) in row.iter().enumerate() {
            let m = (attenuation * v).clamp(-1.0, 1.0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(((n as u64) << 32) | j as u64);
            let p = (1.0 + m) / 2.0;
            let k = Binomial::new(shots, p)
                .map_err(|e| Error::InvalidInput(format!("binomial({shots}, {p}): {e}")))?
                .sample(&mut rng);
            let est = 2.0 * k as f64 / shots as f64 - 1.0;
            xr.push(est);
            sr.push(shot_stderr(est, shots));
        }
        x.push(xr);
        se.push(sr);
    }
    let mut raw = TrajectoryRecord::from_tables(x, None)?;
    raw.stderr = Some(se);
    raw.flags = Some(vec![vec![false; ideal.num_sites()]; ideal.num_steps()]);
    Ok(NoisyRecord { raw, model })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MitigationFactors {
    pub f: Vec<f64>,
    pub stderr: Vec<f64>,
    /// `f < F_FLOOR` at this step.
    pub below_floor: Vec<bool>,
}

/// `f(t_n) = |mean_{j in M} <X_j(t_n)>_0|` of a reference record prepared
/// ferromagnetically and run without the Z rotation.
pub fn reference_factor(reference: &NoisyRecord, subset: &[usize]) -> Result<MitigationFactors> {
    if subset.is_empty() {
        return Err(Error::InvalidInput("site subset is empty".into()));
    }
    let rec = &reference.raw;
    if let Some(&bad) = subset.iter().find(|&&j| j >= rec.num_sites()) {
        return Err(Error::InvalidInput(format!("site {bad} outside reference of {} sites", rec.num_sites())));
    }
    let m = subset.len() as f64;
    let mut out = MitigationFactors { f: Vec::new(), stderr: Vec::new(), below_floor: Vec::new() };
    for (n, row) in rec.x.iter().enumerate() {
        let f = (subset.iter().map(|&j| row[j]).sum::<f64>() / m).abs();
        let var: f64 = match &rec.stderr {
            Some(se) => subset.iter().map(|&j| se[n][j].powi(2)).sum(),
            None => 0.0,
        };
        out.f.push(f);
        out.stderr.push(var.sqrt() / m);
        out.below_floor.push(f < F_FLOOR);
    }
    Ok(out)
}

/// First-order ratio error of `x / f`.
pub fn ratio_stderr(x: f64, sx: f64, f: f64, sf: f64) -> f64 {
    if x.abs() < sx {
        sx / f
    } else {
        // |x/f| sqrt((sx/x)^2 + (sf/f)^2), arranged to be exact when sf = 0
        (sx * sx + (x * sf / f).powi(2)).sqrt() / f.abs()
    }
}

/// Divides raw estimates by `f(t_n)`. Results outside `[-1, 1]` are kept and
/// flagged; steps with `f` below the floor stay raw and are flagged.
pub fn mitigate(raw: &NoisyRecord, factors: &MitigationFactors) -> Result<TrajectoryRecord> {
    let rec = &raw.raw;
    if factors.f.len() != rec.num_steps() {
        return Err(Error::InvalidInput(format!(
            "{} mitigation factors for {} steps",
            factors.f.len(),
            rec.num_steps()
        )));
    }
    let zeros = vec![vec![0.0; rec.num_sites()]; rec.num_steps()];
    let se_in = rec.stderr.as_ref().unwrap_or(&zeros);
    let mut x = Vec::with_capacity(rec.num_steps());
    let mut se = Vec::with_capacity(rec.num_steps());
    let mut flags = Vec::with_capacity(rec.num_steps());
    for n in 0..rec.num_steps() {
        let (f, sf) = (factors.f[n], factors.stderr[n]);
        if factors.below_floor[n] {
            x.push(rec.x[n].clone());
            se.push(se_in[n].clone());
            flags.push(vec![true; rec.num_sites()]);
            continue;
        }
        let xr: Vec<f64> = rec.x[n].iter().map(|v| v / f).collect();
        se.push(rec.x[n].iter().zip(&se_in[n]).map(|(&v, &s)| ratio_stderr(v, s, f, sf)).collect());
        flags.push(xr.iter().map(|v| v.abs() > 1.0).collect());
        x.push(xr);
    }
    let mut out = TrajectoryRecord::from_tables(x, None)?;
    out.stderr = Some(se);
    out.flags = Some(flags);
    Ok(out)
}
