//! Amplitude encoding by a binary tree of RY rotations.
//!
//! The target vector `v` of length `2^n` is split recursively in halves.
//! The root decides how much weight goes to the upper half (most-significant
//! qubit set), each child splits its half again on the next lower qubit, and
//! the leaves fix the relative weight *and sign* of each adjacent pair on
//! qubit 0. Level `k` of the tree therefore rotates qubit `n-1-k`, and each of
//! its `2^k` angles is applied conditioned on one bit pattern of the `k`
//! qubits above it (a uniformly controlled, or multiplexed, RY).

use super::FeatureVector;
use crate::error::{Error, Result};
use crate::linalg;
use crate::sim::{Circuit, Gate};

/// Rotation angles of the state-preparation tree, root first.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleTree {
    n_qubits: usize,
    levels: Vec<Vec<f64>>,
}

impl AngleTree {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `levels()[k]` holds the `2^k` angles of depth `k`.
    pub fn levels(&self) -> &[Vec<f64>] {
        &self.levels
    }

    pub fn angle_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

/// Computes the RY angles that prepare the real unit vector `v` from `|0...0>`.
///
/// Internal nodes get `2 atan2(|R|, |L|)` over their two halves; leaves get
/// `2 atan2(b, a)` over their pair, which keeps the sign of both entries.
pub fn build_angle_tree(v: &FeatureVector) -> Result<AngleTree> {
    let values = v.values();
    let len = values.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Shape(format!(
            "amplitude vector length {len} is not a power of two >= 2"
        )));
    }
    let n_qubits = len.trailing_zeros() as usize;
    crate::sim::state_width_check(n_qubits)?;

    let mut levels = Vec::with_capacity(n_qubits);
    for k in 0..n_qubits {
        let block = len >> k;
        let half = block / 2;
        let angles = values
            .chunks_exact(block)
            .map(|w| {
                if k + 1 == n_qubits {
                    let a = 2.0 * w[1].atan2(w[0]);
                    // atan2(-0.0, x<0) gives -pi; RY(-2pi) == RY(2pi)
                    if a <= -2.0 * std::f64::consts::PI {
                        -a
                    } else {
                        a
                    }
                } else {
                    let (l, r) = w.split_at(half);
                    2.0 * linalg::norm(r).atan2(linalg::norm(l))
                }
            })
            .collect();
        levels.push(angles);
    }
    Ok(AngleTree { n_qubits, levels })
}

/// Multiplexed-RY circuit realizing `tree` on `|0...0>`.
///
/// Every tree node becomes one rotation (zero angles included). A node at
/// depth `k > 0` is a controlled RY on qubit `n-1-k` with controls on qubits
/// `n-k..n-1`; controls that must read `0` are conjugated by X.
pub fn amplitude_circuit(tree: &AngleTree) -> Circuit {
    let n = tree.n_qubits;
    let mut circuit = Circuit::new(n).expect("tree width was checked when built");
    let mut push = |g: Gate| circuit.push(g).expect("indices are in range by construction");
    for (k, angles) in tree.levels.iter().enumerate() {
        let target = n - 1 - k;
        if k == 0 {
            push(Gate::Ry {
                target,
                angle: angles[0],
            });
            continue;
        }
        // bit b of the node index is the value of qubit n-k+b
        let controls: Vec<usize> = (0..k).map(|b| n - k + b).collect();
        for (node, &angle) in angles.iter().enumerate() {
            let flips: Vec<usize> = (0..k)
                .filter(|b| node >> b & 1 == 0)
                .map(|b| controls[b])
                .collect();
            for &q in &flips {
                push(Gate::X(q));
            }
            push(Gate::ControlledRy {
                controls: controls.clone(),
                target,
                angle,
            });
            for &q in &flips {
                push(Gate::X(q));
            }
        }
    }
    circuit
}

/// Number of rotation gates (plain or controlled) in a circuit.
pub fn rotation_count(circuit: &Circuit) -> usize {
    circuit
        .gates()
        .iter()
        .filter(|g| matches!(g, Gate::Ry { .. } | Gate::ControlledRy { .. }))
        .count()
}
