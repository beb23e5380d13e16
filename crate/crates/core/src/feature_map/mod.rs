//! Compilation of real feature vectors into quantum circuits.

mod amplitude;
mod vector;
mod zz;

use serde::{Deserialize, Serialize};

pub use amplitude::{amplitude_circuit, build_angle_tree, rotation_count, AngleTree};
pub use vector::{pad_and_normalize, FeatureVector};
pub use zz::{zz_circuit, AngleScaler};

use crate::error::{Error, Result};
use crate::sim::Circuit;

/// Default number of ZZ repetitions.
pub const DEFAULT_ZZ_REPS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Amplitude,
    Zz,
}

/// Which feature map to use and on how many qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureMapSpec {
    pub kind: MapKind,
    pub n_qubits: usize,
    /// Used by the ZZ map only.
    pub reps: usize,
}

impl FeatureMapSpec {
    pub fn amplitude(n_qubits: usize) -> Self {
        FeatureMapSpec {
            kind: MapKind::Amplitude,
            n_qubits,
            reps: 1,
        }
    }

    pub fn zz(n_qubits: usize, reps: usize) -> Self {
        FeatureMapSpec {
            kind: MapKind::Zz,
            n_qubits,
            reps,
        }
    }

    /// Checks that `dim`-dimensional inputs fit this map.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        crate::sim::state_width_check(self.n_qubits)?;
        match self.kind {
            MapKind::Amplitude if dim > 1 << self.n_qubits => Err(Error::Shape(format!(
                "{dim}-dim input does not fit an amplitude map on {} qubits",
                self.n_qubits
            ))),
            MapKind::Zz if dim != self.n_qubits => Err(Error::Shape(format!(
                "ZZ map on {} qubits needs {} features, got {dim}",
                self.n_qubits, self.n_qubits
            ))),
            _ => Ok(()),
        }
    }

    /// `U_phi(x)`. Amplitude inputs shorter than `2^n` are zero-padded and normalized.
    pub fn circuit(&self, x: &FeatureVector) -> Result<Circuit> {
        self.check_dim(x.dim())?;
        match self.kind {
            MapKind::Amplitude => {
                let v = pad_and_normalize(x.values(), self.n_qubits)?;
                Ok(amplitude_circuit(&build_angle_tree(&v)?))
            }
            MapKind::Zz => zz_circuit(x, self.reps),
        }
    }
}
