//! Fidelity kernels and Gram matrices.
//!
//! The kernel between `x` and `y` is the probability of reading all zeros
//! after running `U(x)` followed by `U(y)^dagger` on `|0...0>`, i.e.
//! `|<phi(y)|phi(x)>|^2`. With `shots == 0` that probability is read off the
//! statevector; otherwise it is estimated from `shots` sampled measurements
//! seeded per pair (see [`crate::rng::pair_seed`]).

mod csv;
mod gram;
mod psd;

pub use self::csv::{read_kernel_csv, write_kernel_csv};
pub use gram::{gram_matrix, linear_gram, Cols, KernelMatrix, TEST_BLOCK_STREAM};
pub use psd::{repair_psd, PsdRepair, PSD_MARGIN};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_map::{FeatureMapSpec, FeatureVector};
use crate::sim::{self, adjoint, run_circuit, zero_probability, Circuit, QuantumState};

/// Shot budget for kernel estimation; `shots == 0` means exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotConfig {
    pub shots: u64,
    pub master_seed: u64,
}

impl ShotConfig {
    pub fn exact() -> Self {
        ShotConfig {
            shots: 0,
            master_seed: 0,
        }
    }

    pub fn sampled(shots: u64, master_seed: u64) -> Self {
        ShotConfig { shots, master_seed }
    }

    pub fn is_exact(&self) -> bool {
        self.shots == 0
    }
}

/// `U(y)^dagger U(x)`, the kernel estimation circuit.
pub fn kernel_circuit(map: &FeatureMapSpec, x: &FeatureVector, y: &FeatureVector) -> Result<Circuit> {
    let mut c = map.circuit(x)?;
    c.append(&adjoint(&map.circuit(y)?))?;
    Ok(c)
}

/// Exact fidelity kernel read from the all-zeros amplitude.
pub fn exact_kernel(map: &FeatureMapSpec, x: &FeatureVector, y: &FeatureVector) -> Result<f64> {
    let c = kernel_circuit(map, x, y)?;
    let out = run_circuit(&sim::zero_state(map.n_qubits)?, &c)?;
    Ok(zero_probability(&out))
}

/// Shot estimate of the kernel for the entry `(i, j)` of a Gram matrix.
pub fn estimated_kernel(
    map: &FeatureMapSpec,
    x: &FeatureVector,
    y: &FeatureVector,
    cfg: &ShotConfig,
    pair: (usize, usize),
) -> Result<f64> {
    if cfg.is_exact() {
        return Err(Error::Argument("estimated_kernel needs shots >= 1".into()));
    }
    let c = kernel_circuit(map, x, y)?;
    let out = run_circuit(&sim::zero_state(map.n_qubits)?, &c)?;
    zero_fraction(&out, cfg.shots, crate::rng::pair_seed(cfg.master_seed, pair.0, pair.1))
}

/// Fraction of all-zeros outcomes among `shots` samples of `state`.
pub(crate) fn zero_fraction(state: &QuantumState, shots: u64, seed: u64) -> Result<f64> {
    let counts = sim::sample_counts(state, shots, seed)?;
    let zeros = "0".repeat(state.n_qubits());
    Ok(counts.get(&zeros) as f64 / shots as f64)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use super::*;

    fn fv(v: &[f64]) -> FeatureVector {
        FeatureVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn self_kernel_is_one() {
        let amp = FeatureMapSpec::amplitude(2);
        let x = FeatureVector::normalized(vec![0.3, -0.2, 0.9, 0.1]).unwrap();
        assert!((exact_kernel(&amp, &x, &x).unwrap() - 1.0).abs() < 1e-10);
        let zz = FeatureMapSpec::zz(3, 2);
        let x = fv(&[0.3, 2.0, 1.1]);
        assert!((exact_kernel(&zz, &x, &x).unwrap() - 1.0).abs() < 1e-10);
        let est = estimated_kernel(&zz, &x, &x, &ShotConfig::sampled(500, 3), (0, 1)).unwrap();
        assert_eq!(est, 1.0);
    }

    #[test]
    fn orthogonal_vectors() {
        let amp = FeatureMapSpec::amplitude(1);
        let (e0, e1) = (fv(&[1.0, 0.0]), fv(&[0.0, 1.0]));
        assert!(exact_kernel(&amp, &e0, &e1).unwrap().abs() < 1e-10);
        let est = estimated_kernel(&amp, &e0, &e1, &ShotConfig::sampled(1000, 9), (0, 1)).unwrap();
        assert_eq!(est, 0.0);
    }

    #[test]
    fn half_overlap() {
        let amp = FeatureMapSpec::amplitude(1);
        let (e0, d) = (fv(&[1.0, 0.0]), fv(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]));
        assert!((exact_kernel(&amp, &e0, &d).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn estimate_near_half() {
        let amp = FeatureMapSpec::amplitude(1);
        let (e0, d) = (fv(&[1.0, 0.0]), fv(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]));
        let mut within = 0;
        for seed in 0..100 {
            let cfg = ShotConfig::sampled(10_000, seed);
            let k = estimated_kernel(&amp, &e0, &d, &cfg, (0, 1)).unwrap();
            if (k - 0.5).abs() <= 0.015 {
                within += 1;
            }
        }
        assert!(within >= 99, "{within}/100");
    }

    #[test]
    fn estimated_requires_shots() {
        let amp = FeatureMapSpec::amplitude(1);
        let e0 = fv(&[1.0, 0.0]);
        assert!(estimated_kernel(&amp, &e0, &e0, &ShotConfig::exact(), (0, 0)).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let zz = FeatureMapSpec::zz(2, 1);
        assert!(matches!(
            exact_kernel(&zz, &fv(&[0.1, 0.2, 0.3]), &fv(&[0.1, 0.2])),
            Err(Error::Shape(_))
        ));
    }
}
