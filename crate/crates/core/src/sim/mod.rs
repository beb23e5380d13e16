//! Dense statevector simulation.
//!
//! Conventions used throughout the crate:
//!
//! * qubit 0 is the least-significant bit of a basis-state index, so the
//!   amplitude of `|q_{n-1} ... q_1 q_0>` lives at `sum_k q_k 2^k`;
//! * outcome strings are written most-significant qubit first (`"001"` is
//!   index 1 on three qubits);
//! * `RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]` and
//!   `RZ(t) = diag(e^{-it/2}, e^{it/2})`.

mod circuit;
mod gate;
mod measure;
mod state;

pub use circuit::{adjoint, run_circuit, Circuit};
pub use gate::{apply_gate, Gate};
pub use measure::{sample_counts, zero_probability, MeasurementCounts};
pub use state::{zero_state, QuantumState};
pub(crate) use state::check_qubits as state_width_check;

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 12;

/// Tolerance on `sum |a_i|^2 == 1` for a well-formed state.
pub const NORM_TOLERANCE: f64 = 1e-9;
