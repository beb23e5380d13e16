//! Aggregated accuracy reports.
//!
//! `report.json` has two top-level members: `payload` (everything that is a
//! pure function of config and seeds) and `timings` (wall-clock seconds per
//! stage). Reruns with the same config produce byte-identical payloads.
//!
//! ```json
//! {
//!   "payload": {
//!     "config": { ... },
//!     "stddev": "sample",
//!     "cells": [
//!       { "map": "amplitude", "dim": 4, "qubits": 2, "shots": 10000,
//!         "seeds": [0, 1], "accuracies": [0.7, 0.5], "failures": [],
//!         "mean": 0.6, "stddev": 0.1414, "single_sample": false,
//!         "formatted": "0.600±0.141" }
//!     ],
//!     "bow": { "map": "bow", ... }
//!   },
//!   "timings": { "embed": 0.1, "kernel": 2.3, "train": 0.01, "total": 2.5 }
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedFailure {
    pub seed: u64,
    pub error: String,
}

/// One (map, dimension) cell of the results table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub map: String,
    pub dim: Option<usize>,
    pub qubits: Option<usize>,
    pub shots: u64,
    /// Seeds that succeeded, aligned with `accuracies`.
    pub seeds: Vec<u64>,
    pub accuracies: Vec<f64>,
    pub failures: Vec<SeedFailure>,
    /// `None` when every seed failed.
    pub mean: Option<f64>,
    pub stddev: Option<f64>,
    pub single_sample: bool,
    pub formatted: String,
}

/// Mean and sample standard deviation (n - 1); the deviation is 0 for one value.
pub fn mean_stddev(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

pub fn format_cell(mean: f64, stddev: f64) -> String {
    if mean.is_nan() {
        return "n/a".into();
    }
    format!("{mean:.3}±{stddev:.3}")
}

impl CellResult {
    pub fn new(
        map: &str,
        dim: Option<usize>,
        qubits: Option<usize>,
        shots: u64,
        outcomes: Vec<(u64, Result<f64>)>,
    ) -> Self {
        let mut seeds = Vec::new();
        let mut accuracies = Vec::new();
        let mut failures = Vec::new();
        for (seed, r) in outcomes {
            match r {
                Ok(a) => {
                    seeds.push(seed);
                    accuracies.push(a);
                }
                Err(e) => failures.push(SeedFailure {
                    seed,
                    error: e.to_string(),
                }),
            }
        }
        let (mean, stddev) = mean_stddev(&accuracies);
        let present = !accuracies.is_empty();
        CellResult {
            map: map.to_owned(),
            dim,
            qubits,
            shots,
            single_sample: accuracies.len() == 1,
            formatted: format_cell(mean, stddev),
            seeds,
            accuracies,
            failures,
            mean: present.then_some(mean),
            stddev: present.then_some(stddev),
        }
    }

    /// More than half of the attempted seeds failed.
    pub fn mostly_failed(&self) -> bool {
        self.failures.len() * 2 > self.failures.len() + self.accuracies.len()
    }

    pub fn best(&self) -> f64 {
        self.accuracies.iter().copied().fold(f64::NAN, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportPayload {
    pub config: ExperimentConfig,
    pub stddev: String,
    pub cells: Vec<CellResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bow: Option<CellResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub payload: ReportPayload,
    pub timings: BTreeMap<String, f64>,
}

impl ExperimentReport {
    pub fn new(config: ExperimentConfig, cells: Vec<CellResult>, bow: Option<CellResult>) -> Self {
        ExperimentReport {
            payload: ReportPayload {
                config,
                stddev: "sample".into(),
                cells,
                bow,
            },
            timings: BTreeMap::new(),
        }
    }

    pub fn cell(&self, map: &str, dim: usize) -> Option<&CellResult> {
        self.payload.cells.iter().find(|c| c.map == map && c.dim == Some(dim))
    }

    pub fn payload_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.payload)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn any_mostly_failed(&self) -> bool {
        self.payload.cells.iter().chain(&self.payload.bow).any(CellResult::mostly_failed)
    }

    /// Rows by dimension, one column per map in first-seen order, plus the BoW baseline.
    pub fn table_csv(&self) -> String {
        let mut maps: Vec<&str> = Vec::new();
        let mut dims: Vec<usize> = Vec::new();
        for c in &self.payload.cells {
            if !maps.contains(&c.map.as_str()) {
                maps.push(&c.map);
            }
            if let Some(d) = c.dim {
                if !dims.contains(&d) {
                    dims.push(d);
                }
            }
        }
        let mut out = String::from("dim");
        for m in &maps {
            write!(out, ",{}", column_title(m)).unwrap();
        }
        out.push('\n');
        for d in dims {
            write!(out, "{d}").unwrap();
            for m in &maps {
                let cell = self.cell(m, d).map_or("", |c| c.formatted.as_str());
                write!(out, ",{cell}").unwrap();
            }
            out.push('\n');
        }
        if let Some(b) = &self.payload.bow {
            writeln!(out, "bow,{}", b.formatted).unwrap();
        }
        out
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let json = dir.join("report.json");
        fs::write(&json, self.to_json()?).map_err(|e| Error::io(&json, e))?;
        let csv = dir.join("report.csv");
        fs::write(&csv, self.table_csv()).map_err(|e| Error::io(&csv, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn column_title(map: &str) -> &str {
    match map {
        "linear" => "CSVM",
        "zz" => "ZZ",
        "amplitude" => "Amp",
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_stddev() {
        let (m, s) = mean_stddev(&[0.5, 0.7]);
        assert!((m - 0.6).abs() < 1e-15);
        assert!((s - 0.02f64.sqrt()).abs() < 1e-15);
        assert_eq!(mean_stddev(&[0.8]), (0.8, 0.0));
    }

    #[test]
    fn cell_format() {
        assert_eq!(format_cell(0.621, 0.132), "0.621±0.132");
        let c = CellResult::new("amplitude", Some(4), Some(2), 0, vec![(3, Ok(0.9))]);
        assert!(c.single_sample);
        assert_eq!(c.formatted, "0.900±0.000");
    }

    #[test]
    fn failures_counted() {
        let c = CellResult::new(
            "zz",
            Some(2),
            Some(2),
            0,
            vec![
                (0, Ok(0.5)),
                (1, Err(Error::DegenerateLabels("x".into()))),
                (2, Err(Error::DegenerateLabels("x".into()))),
            ],
        );
        assert!(c.mostly_failed());
        assert_eq!(c.seeds, vec![0]);
        assert_eq!(c.failures[1].seed, 2);
    }
}
