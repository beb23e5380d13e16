use std::collections::BTreeMap;

use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::QuantumState;
use crate::error::{Error, Result};
use crate::rng;

/// Outcome tallies from repeated computational-basis measurement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementCounts {
    pub shots: u64,
    /// Outcome string (most-significant qubit first) to count. Zero counts are omitted.
    pub counts: BTreeMap<String, u64>,
}

impl MeasurementCounts {
    pub fn get(&self, outcome: &str) -> u64 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    pub fn frequency(&self, outcome: &str) -> f64 {
        self.get(outcome) as f64 / self.shots as f64
    }
}

pub(crate) fn outcome_string(index: usize, n_qubits: usize) -> String {
    format!("{index:0n_qubits$b}")
}

/// Draws `shots` i.i.d. measurement outcomes of `state` under `seed`.
///
/// The tallies are generated as a multinomial sample, one conditional
/// binomial per basis state in index order, which has the same law as
/// tallying individual shots but costs `O(2^n)` instead of `O(shots)`.
pub fn sample_counts(state: &QuantumState, shots: u64, seed: u64) -> Result<MeasurementCounts> {
    if shots == 0 {
        return Err(Error::Argument("shots must be at least 1".into()));
    }
    let tallies = sample_tallies(&state.probabilities(), shots, seed);
    let n = state.n_qubits();
    let counts = tallies
        .into_iter()
        .enumerate()
        .filter(|&(_, k)| k > 0)
        .map(|(i, k)| (outcome_string(i, n), k))
        .collect();
    Ok(MeasurementCounts { shots, counts })
}

pub(crate) fn sample_tallies(probs: &[f64], shots: u64, seed: u64) -> Vec<u64> {
    let mut rng = rng::seeded(seed);
    let mut tallies = vec![0u64; probs.len()];
    let mut remaining = shots;
    let mut mass: f64 = probs.iter().sum();
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i + 1 == probs.len() {
            tallies[i] = remaining;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let k = if q >= 1.0 {
            remaining
        } else if q <= 0.0 {
            0
        } else {
            Binomial::new(remaining, q)
                .expect("probability clamped to [0, 1]")
                .sample(&mut rng)
        };
        tallies[i] = k;
        remaining -= k;
        mass -= p;
    }
    tallies
}

/// `|<0...0|state>|^2`.
pub fn zero_probability(state: &QuantumState) -> f64 {
    state.probability(0).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{apply_gate, zero_state, Gate};

    fn plus() -> QuantumState {
        apply_gate(&zero_state(1).unwrap(), &Gate::H(0)).unwrap()
    }

    #[test]
    fn deterministic_outcome() {
        let one = apply_gate(&zero_state(1).unwrap(), &Gate::X(0)).unwrap();
        let c = sample_counts(&one, 100, 5).unwrap();
        assert_eq!(c.counts, BTreeMap::from([("1".to_string(), 100)]));
    }

    #[test]
    fn plus_state_is_balanced() {
        for seed in 0..20 {
            let c = sample_counts(&plus(), 10_000, seed).unwrap();
            let zeros = c.get("0");
            assert!((4700..=5300).contains(&zeros), "seed {seed}: {zeros}");
            assert_eq!(c.counts.values().sum::<u64>(), 10_000);
        }
    }

    #[test]
    fn same_seed_same_counts() {
        let a = sample_counts(&plus(), 1234, 99).unwrap();
        let b = sample_counts(&plus(), 1234, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_shots_rejected() {
        assert!(matches!(sample_counts(&plus(), 0, 1), Err(Error::Argument(_))));
    }

    #[test]
    fn zero_probability_values() {
        assert_eq!(zero_probability(&zero_state(3).unwrap()), 1.0);
        let one = apply_gate(&zero_state(1).unwrap(), &Gate::X(0)).unwrap();
        assert_eq!(zero_probability(&one), 0.0);
        assert!((zero_probability(&plus()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn outcome_strings_are_msb_first() {
        assert_eq!(outcome_string(1, 3), "001");
        assert_eq!(outcome_string(6, 3), "110");
    }
}
