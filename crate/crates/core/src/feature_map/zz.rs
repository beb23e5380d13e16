//! Second-order Pauli-Z ("ZZ") feature map.

use std::f64::consts::PI;

use super::FeatureVector;
use crate::error::{Error, Result};
use crate::sim::{Circuit, Gate};

/// Builds the ZZ map circuit for `x` on `x.dim()` qubits.
///
/// One repetition is: H on every qubit, `RZ(2 x_i)` on qubit `i`, then for
/// each pair `i < j` (lexicographic) `CNOT(i->j) RZ(2 (pi - x_i)(pi - x_j)) CNOT(i->j)`.
pub fn zz_circuit(x: &FeatureVector, reps: usize) -> Result<Circuit> {
    if reps == 0 {
        return Err(Error::Argument("ZZ map needs at least one repetition".into()));
    }
    let n = x.dim();
    let mut c = Circuit::new(n)?;
    let v = x.values();
    for _ in 0..reps {
        for q in 0..n {
            c.push(Gate::H(q))?;
        }
        for (q, &xi) in v.iter().enumerate() {
            c.push(Gate::Rz {
                target: q,
                angle: 2.0 * xi,
            })?;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                c.push(Gate::Cnot { control: i, target: j })?;
                c.push(Gate::Rz {
                    target: j,
                    angle: 2.0 * (PI - v[i]) * (PI - v[j]),
                })?;
                c.push(Gate::Cnot { control: i, target: j })?;
            }
        }
    }
    Ok(c)
}

/// Per-dimension affine rescaling onto `[0, pi]`, fitted on a training set.
///
/// Values outside the fitted range are clamped. Constant dimensions map to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleScaler {
    min: Vec<f64>,
    max: Vec<f64>,
}

impl AngleScaler {
    pub fn fit(train: &[FeatureVector]) -> Result<Self> {
        let first = train
            .first()
            .ok_or_else(|| Error::Argument("cannot fit a scaler on no vectors".into()))?;
        let d = first.dim();
        let mut min = vec![f64::INFINITY; d];
        let mut max = vec![f64::NEG_INFINITY; d];
        for v in train {
            if v.dim() != d {
                return Err(Error::Shape(format!("mixed dimensions {} and {d}", v.dim())));
            }
            for (k, &x) in v.values().iter().enumerate() {
                min[k] = min[k].min(x);
                max[k] = max[k].max(x);
            }
        }
        Ok(AngleScaler { min, max })
    }

    pub fn transform(&self, v: &FeatureVector) -> Result<FeatureVector> {
        if v.dim() != self.min.len() {
            return Err(Error::Shape(format!(
                "scaler fitted on {} dims, got {}",
                self.min.len(),
                v.dim()
            )));
        }
        let out = v
            .values()
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                let span = self.max[k] - self.min[k];
                if span > 0.0 {
                    (PI * (x - self.min[k]) / span).clamp(0.0, PI)
                } else {
                    0.0
                }
            })
            .collect();
        FeatureVector::new(out)
    }
}
