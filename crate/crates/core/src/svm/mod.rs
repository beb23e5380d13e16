//! Binary soft-margin SVM over a precomputed kernel matrix.

mod smo;

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use smo::{dual_objective, train};

use crate::error::{Error, Result};
use crate::kernel::KernelMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    #[serde(rename = "C")]
    pub c: f64,
    pub tol: f64,
    /// Iteration budget, in multiples of the training-set size.
    pub max_passes: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            c: 1.0,
            tol: 1e-3,
            max_passes: 1000,
        }
    }
}

impl TrainConfig {
    pub fn with_c(c: f64) -> Self {
        TrainConfig {
            c,
            ..Default::default()
        }
    }
}

/// Trained dual solution. Serializes as `{alphas, bias, labels, C, tol, support_indices}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub alphas: Vec<f64>,
    pub bias: f64,
    pub labels: Vec<i8>,
    #[serde(rename = "C")]
    pub c: f64,
    pub tol: f64,
    #[serde(default)]
    pub support_indices: Vec<usize>,
}

impl SvmModel {
    pub fn n_train(&self) -> usize {
        self.alphas.len()
    }

    /// `sum_i alpha_i y_i`; zero for a feasible dual point.
    pub fn label_balance(&self) -> f64 {
        self.alphas
            .iter()
            .zip(&self.labels)
            .map(|(a, &y)| a * f64::from(y))
            .sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: SvmModel = serde_json::from_str(text)?;
        if model.alphas.len() != model.labels.len() {
            return Err(Error::Shape("alphas and labels differ in length".into()));
        }
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

/// `sum_i alpha_i y_i k_row[i] + bias`.
pub fn decision_value(model: &SvmModel, k_row: &[f64]) -> Result<f64> {
    if k_row.len() != model.n_train() {
        return Err(Error::Shape(format!(
            "kernel row has {} entries, model has {} training points",
            k_row.len(),
            model.n_train()
        )));
    }
    let sum: f64 = model
        .alphas
        .iter()
        .zip(&model.labels)
        .zip(k_row)
        .filter(|((&a, _), _)| a != 0.0)
        .map(|((a, &y), k)| a * f64::from(y) * k)
        .sum();
    Ok(sum + model.bias)
}

/// Sign of the decision value per row; 0 maps to +1.
pub fn predict(model: &SvmModel, k_test: &KernelMatrix) -> Result<Vec<i8>> {
    if k_test.rows() == 0 {
        return Ok(Vec::new());
    }
    (0..k_test.rows())
        .map(|i| decision_value(model, k_test.row(i)).map(sign))
        .collect()
}

pub fn sign(v: f64) -> i8 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

/// Fraction of positions where `predicted` and `gold` agree.
pub fn accuracy(predicted: &[i8], gold: &[i8]) -> Result<f64> {
    if predicted.is_empty() || predicted.len() != gold.len() {
        return Err(Error::Argument(format!(
            "accuracy needs two nonempty lists of equal length (got {} and {})",
            predicted.len(),
            gold.len()
        )));
    }
    let hits = predicted.iter().zip(gold).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / predicted.len() as f64)
}
