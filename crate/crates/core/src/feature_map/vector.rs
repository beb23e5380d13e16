use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// A finite real feature vector.
///
/// Amplitude encoding expects unit norm (see [`FeatureVector::normalized`]);
/// ZZ encoding takes rescaled coordinates as they are.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Shape("empty feature vector".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Argument(format!("non-finite feature value {bad}")));
        }
        Ok(FeatureVector(values))
    }

    /// Scales `values` to unit L2 norm.
    pub fn normalized(values: Vec<f64>) -> Result<Self> {
        let mut v = FeatureVector::new(values)?;
        let norm = linalg::norm(&v.0);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::DegenerateInput("cannot normalize a zero vector".into()));
        }
        v.0.iter_mut().for_each(|x| *x /= norm);
        Ok(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.0)
    }

    pub fn dot(&self, other: &FeatureVector) -> f64 {
        linalg::dot(&self.0, &other.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Zero-pads `raw` to `2^n_qubits` coordinates and normalizes.
pub fn pad_and_normalize(raw: &[f64], n_qubits: usize) -> Result<FeatureVector> {
    crate::sim::state_width_check(n_qubits)?;
    let width = 1usize << n_qubits;
    if raw.len() > width {
        return Err(Error::Shape(format!(
            "{} features do not fit in {n_qubits} qubits ({width} amplitudes)",
            raw.len()
        )));
    }
    let mut padded = raw.to_vec();
    padded.resize(width, 0.0);
    FeatureVector::normalized(padded)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_into_three_qubits() {
        let raw = [1.0, -2.0, 3.0, 0.5, 0.25, 1.5, -1.0];
        let v = pad_and_normalize(&raw, 3).unwrap();
        assert_eq!(v.dim(), 8);
        assert_eq!(v.values()[7], 0.0);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn three_four_five() {
        let v = pad_and_normalize(&[3.0, 4.0], 1).unwrap();
        assert!((v.values()[0] - 0.6).abs() < 1e-15);
        assert!((v.values()[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            pad_and_normalize(&[0.0, 0.0, 0.0], 2),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(pad_and_normalize(&[1.0; 5], 2), Err(Error::Shape(_))));
        assert!(FeatureVector::new(vec![f64::NAN]).is_err());
    }
}
