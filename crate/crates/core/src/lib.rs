//! Quantum-kernel text classification on a statevector simulator.
//!
//! Sentence vectors from [`text`] are encoded by [`feature_map`], compared
//! through fidelity kernels in [`kernel`] (exact or shot-estimated on [`sim`])
//! and classified with the SMO solver in [`svm`]. [`harness`] wires the stages
//! into configurable experiments; the `qtext` binary exposes them as commands.

pub mod error;
pub mod feature_map;
pub mod harness;
pub mod kernel;
pub mod linalg;
pub mod rng;
pub mod sim;
pub mod svm;
pub mod text;

pub use error::{Error, Result};
