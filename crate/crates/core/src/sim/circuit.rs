use super::state::check_qubits;
use super::{Gate, QuantumState};
use crate::error::{Error, Result};

/// An ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        Ok(Circuit {
            n_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other` (same register width).
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::Shape(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Runs the circuit on `|0...0>`.
    pub fn prepare(&self) -> QuantumState {
        let mut state = super::zero_state(self.n_qubits).expect("width checked at construction");
        for g in &self.gates {
            g.apply_in_place(&mut state);
        }
        state
    }
}

/// Gates reversed, each replaced by its inverse.
pub fn adjoint(circuit: &Circuit) -> Circuit {
    Circuit {
        n_qubits: circuit.n_qubits,
        gates: circuit.gates.iter().rev().map(Gate::inverse).collect(),
    }
}

/// Applies the gates of `circuit` to `state` in list order.
pub fn run_circuit(state: &QuantumState, circuit: &Circuit) -> Result<QuantumState> {
    if state.n_qubits() != circuit.n_qubits {
        return Err(Error::Shape(format!(
            "{}-qubit circuit on a {}-qubit state",
            circuit.n_qubits,
            state.n_qubits()
        )));
    }
    let mut out = state.clone();
    for g in &circuit.gates {
        g.apply_in_place(&mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::zero_state;

    #[test]
    fn empty_circuit_is_identity() {
        let s = zero_state(2).unwrap();
        let c = Circuit::new(2).unwrap();
        assert_eq!(run_circuit(&s, &c).unwrap(), s);
    }

    #[test]
    fn inverse_rotation_pair() {
        let s = run_circuit(
            &zero_state(1).unwrap(),
            &Circuit::from_gates(1, vec![Gate::H(0), Gate::Rz { target: 0, angle: 0.3 }]).unwrap(),
        )
        .unwrap();
        let pair = Circuit::from_gates(
            1,
            vec![Gate::Ry { target: 0, angle: 0.7 }, Gate::Ry { target: 0, angle: -0.7 }],
        )
        .unwrap();
        let out = run_circuit(&s, &pair).unwrap();
        for (a, b) in out.amplitudes().iter().zip(s.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn adjoint_of_single_rotation() {
        let c = Circuit::from_gates(1, vec![Gate::Ry { target: 0, angle: 0.4 }]).unwrap();
        assert_eq!(adjoint(&c).gates(), &[Gate::Ry { target: 0, angle: -0.4 }]);
        assert_eq!(adjoint(&adjoint(&c)), c);
    }

    #[test]
    fn width_mismatch() {
        let c = Circuit::new(2).unwrap();
        assert!(matches!(run_circuit(&zero_state(3).unwrap(), &c), Err(Error::Shape(_))));
    }

    #[test]
    fn push_validates() {
        let mut c = Circuit::new(2).unwrap();
        assert!(c.push(Gate::H(5)).is_err());
        assert!(c.is_empty());
    }
}
