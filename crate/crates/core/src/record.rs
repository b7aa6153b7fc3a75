//! Stroboscopic per-site magnetization records and their CSV forms.
//!
//! Trajectory CSV header: `n,j,x,y` (y empty when not recorded).
//! Uncertainty CSV header: `n,j,x,stderr,flag` (flag is 0 or 1).

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `x[n][j] = <X_j(nT)>`, optionally `<Y_j(nT)>`, standard errors and flags.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRecord {
    num_sites: usize,
    pub x: Vec<Vec<f64>>,
    pub y: Option<Vec<Vec<f64>>>,
    pub stderr: Option<Vec<Vec<f64>>>,
    /// `true` marks an unreliable entry.
    pub flags: Option<Vec<Vec<bool>>>,
}

impl TrajectoryRecord {
    pub fn new(num_sites: usize) -> Self {
        Self { num_sites, x: Vec::new(), y: None, stderr: None, flags: None }
    }

    pub fn with_y(num_sites: usize) -> Self {
        Self { y: Some(Vec::new()), ..Self::new(num_sites) }
    }

    /// Builds a record from full tables, checking that they are rectangular.
    pub fn from_tables(x: Vec<Vec<f64>>, y: Option<Vec<Vec<f64>>>) -> Result<Self> {
        let num_sites = x.first().map_or(0, Vec::len);
        let rec = Self { num_sites, x, y, stderr: None, flags: None };
        rec.validate()?;
        Ok(rec)
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    /// Number of recorded steps (`n_max + 1`).
    pub fn num_steps(&self) -> usize {
        self.x.len()
    }

    pub fn has_y(&self) -> bool {
        self.y.is_some()
    }

    pub fn push_step(&mut self, x: Vec<f64>, y: Option<Vec<f64>>) {
        debug_assert_eq!(x.len(), self.num_sites);
        self.x.push(x);
        if let (Some(ys), Some(row)) = (self.y.as_mut(), y) {
            ys.push(row);
        }
    }

    pub fn y_table(&self) -> Result<&[Vec<f64>]> {
        self.y.as_deref().ok_or(Error::RequiresY)
    }

    /// Time series of `<X_j>` for one site.
    pub fn x_series(&self, site: usize) -> Vec<f64> {
        self.x.iter().map(|row| row[site]).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let rect = |t: &[Vec<f64>]| t.len() == self.x.len() && t.iter().all(|r| r.len() == self.num_sites);
        if !self.x.iter().all(|r| r.len() == self.num_sites) {
            return Err(Error::InvalidInput("ragged x table".into()));
        }
        if self.y.as_deref().is_some_and(|t| !rect(t)) {
            return Err(Error::InvalidInput("y table does not match x".into()));
        }
        if self.stderr.as_deref().is_some_and(|t| !rect(t)) {
            return Err(Error::InvalidInput("stderr table does not match x".into()));
        }
        if let Some(f) = &self.flags {
            if f.len() != self.x.len() || f.iter().any(|r| r.len() != self.num_sites) {
                return Err(Error::InvalidInput("flag table does not match x".into()));
            }
        }
        Ok(())
    }

    /// Writes `n,j,x,y`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for (n, row) in self.x.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let y = self.y.as_ref().map(|t| t[n][j]);
                w.serialize(TrajectoryRow { n, j, x, y })?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads `n,j,x,y` rows in any order. Missing y cells drop the y table.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rows: Vec<TrajectoryRow> = Vec::new();
        for row in csv::Reader::from_reader(input).deserialize() {
            rows.push(row?);
        }
        let steps = rows.iter().map(|r| r.n + 1).max().unwrap_or(0);
        let sites = rows.iter().map(|r| r.j + 1).max().unwrap_or(0);
        if rows.len() != steps * sites {
            return Err(Error::InvalidInput(format!(
                "trajectory CSV has {} rows, expected {steps} steps x {sites} sites",
                rows.len()
            )));
        }
        let mut x = vec![vec![f64::NAN; sites]; steps];
        let mut y = vec![vec![f64::NAN; sites]; steps];
        let mut has_y = true;
        for r in &rows {
            x[r.n][r.j] = r.x;
            match r.y {
                Some(v) => y[r.n][r.j] = v,
                None => has_y = false,
            }
        }
        if x.iter().flatten().any(|v| v.is_nan()) {
            return Err(Error::InvalidInput("trajectory CSV has duplicate or missing (n, j) entries".into()));
        }
        Self::from_tables(x, has_y.then_some(y))
    }

    /// Writes `n,j,x,stderr,flag`.
    pub fn write_uncertainty_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for (n, row) in self.x.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let stderr = self.stderr.as_ref().map_or(0.0, |t| t[n][j]);
                let flag = self.flags.as_ref().is_some_and(|t| t[n][j]) as u8;
                w.serialize(UncertaintyRow { n, j, x, stderr, flag })?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_uncertainty_csv<R: Read>(input: R) -> Result<Self> {
        let mut rows: Vec<UncertaintyRow> = Vec::new();
        for row in csv::Reader::from_reader(input).deserialize() {
            rows.push(row?);
        }
        let steps = rows.iter().map(|r| r.n + 1).max().unwrap_or(0);
        let sites = rows.iter().map(|r| r.j + 1).max().unwrap_or(0);
        if rows.len() != steps * sites {
            return Err(Error::InvalidInput("uncertainty CSV is not rectangular".into()));
        }
        let mut x = vec![vec![0.0; sites]; steps];
        let mut se = vec![vec![0.0; sites]; steps];
        let mut fl = vec![vec![false; sites]; steps];
        for r in rows {
            x[r.n][r.j] = r.x;
            se[r.n][r.j] = r.stderr;
            fl[r.n][r.j] = r.flag != 0;
        }
        let mut rec = Self::from_tables(x, None)?;
        rec.stderr = Some(se);
        rec.flags = Some(fl);
        Ok(rec)
    }
}

#[derive(Serialize, Deserialize)]
struct TrajectoryRow {
    n: usize,
    j: usize,
    x: f64,
    y: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct UncertaintyRow {
    n: usize,
    j: usize,
    x: f64,
    stderr: f64,
    flag: u8,
}

/// One value per step, written as `n,<name>`.
pub fn write_series_csv<W: Write>(out: W, name: &str, values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", name])?;
    for (n, v) in values.iter().enumerate() {
        w.write_record([n.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
