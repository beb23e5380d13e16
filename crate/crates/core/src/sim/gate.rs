use num_complex::Complex64;

use super::QuantumState;
use crate::error::{Error, Result};

/// The simulator's fixed gate set.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Ry { target: usize, angle: f64 },
    Rz { target: usize, angle: f64 },
    Cnot { control: usize, target: usize },
    /// RY on `target` applied only when every control qubit reads `1`.
    ControlledRy {
        controls: Vec<usize>,
        target: usize,
        angle: f64,
    },
}

type Matrix2 = [[Complex64; 2]; 2];

const fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl Gate {
    pub fn target(&self) -> usize {
        match *self {
            Gate::H(t) | Gate::X(t) => t,
            Gate::Ry { target, .. }
            | Gate::Rz { target, .. }
            | Gate::Cnot { target, .. }
            | Gate::ControlledRy { target, .. } => target,
        }
    }

    pub fn controls(&self) -> &[usize] {
        match self {
            Gate::Cnot { control, .. } => std::slice::from_ref(control),
            Gate::ControlledRy { controls, .. } => controls,
            _ => &[],
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Ry { angle, .. } | Gate::Rz { angle, .. } | Gate::ControlledRy { angle, .. } => {
                Some(angle)
            }
            _ => None,
        }
    }

    /// Inverse gate: rotations are negated, the rest are self-inverse.
    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Ry { target, angle } => Gate::Ry {
                target: *target,
                angle: -angle,
            },
            Gate::Rz { target, angle } => Gate::Rz {
                target: *target,
                angle: -angle,
            },
            Gate::ControlledRy {
                controls,
                target,
                angle,
            } => Gate::ControlledRy {
                controls: controls.clone(),
                target: *target,
                angle: -angle,
            },
            other => other.clone(),
        }
    }

    /// Checks that all indices are distinct and below `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let target = self.target();
        if target >= n_qubits {
            return Err(Error::Index(format!(
                "target {target} out of range for {n_qubits} qubits"
            )));
        }
        if let Gate::ControlledRy { controls, .. } = self {
            if controls.is_empty() {
                return Err(Error::Index("controlled RY needs at least one control".into()));
            }
        }
        let controls = self.controls();
        for (k, &q) in controls.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::Index(format!(
                    "control {q} out of range for {n_qubits} qubits"
                )));
            }
            if q == target || controls[..k].contains(&q) {
                return Err(Error::Index(format!("qubit {q} used twice in one gate")));
            }
        }
        if let Some(angle) = self.angle() {
            if !angle.is_finite() {
                return Err(Error::Argument(format!("non-finite rotation angle {angle}")));
            }
        }
        Ok(())
    }

    fn matrix(&self) -> Matrix2 {
        match *self {
            Gate::H(_) => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                [[c(h), c(h)], [c(h), c(-h)]]
            }
            Gate::X(_) | Gate::Cnot { .. } => [[c(0.0), c(1.0)], [c(1.0), c(0.0)]],
            Gate::Ry { angle, .. } | Gate::ControlledRy { angle, .. } => {
                let (s, co) = (angle / 2.0).sin_cos();
                [[c(co), c(-s)], [c(s), c(co)]]
            }
            Gate::Rz { angle, .. } => {
                let half = angle / 2.0;
                [
                    [Complex64::from_polar(1.0, -half), c(0.0)],
                    [c(0.0), Complex64::from_polar(1.0, half)],
                ]
            }
        }
    }

    /// Applies the gate in place. Indices must already be validated.
    pub(crate) fn apply_in_place(&self, state: &mut QuantumState) {
        let m = self.matrix();
        let target_bit = 1usize << self.target();
        let control_mask = self.controls().iter().fold(0usize, |acc, &q| acc | (1 << q));
        let amps = state.amplitudes_mut();
        for i in 0..amps.len() {
            if i & target_bit != 0 || i & control_mask != control_mask {
                continue;
            }
            let j = i | target_bit;
            let (a0, a1) = (amps[i], amps[j]);
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[j] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

/// Returns `gate |state>`.
pub fn apply_gate(state: &QuantumState, gate: &Gate) -> Result<QuantumState> {
    gate.validate(state.n_qubits())?;
    let mut out = state.clone();
    gate.apply_in_place(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    use super::*;
    use crate::sim::zero_state;

    fn real_parts(s: &QuantumState) -> Vec<f64> {
        s.amplitudes().iter().map(|a| a.re).collect()
    }

    #[test]
    fn ry_pi_flips() {
        let s = apply_gate(&zero_state(1).unwrap(), &Gate::Ry { target: 0, angle: PI }).unwrap();
        let r = real_parts(&s);
        assert!(r[0].abs() < 1e-15 && (r[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hadamard_on_zero() {
        let s = apply_gate(&zero_state(1).unwrap(), &Gate::H(0)).unwrap();
        for a in real_parts(&s) {
            assert!((a - FRAC_1_SQRT_2).abs() < 1e-15);
        }
    }

    #[test]
    fn ry_half_pi() {
        let s = apply_gate(&zero_state(1).unwrap(), &Gate::Ry { target: 0, angle: PI / 2.0 })
            .unwrap();
        let r = real_parts(&s);
        assert!((r[0] - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((r[1] - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn inactive_control_leaves_state() {
        let s0 = apply_gate(&zero_state(2).unwrap(), &Gate::H(1)).unwrap();
        let g = Gate::ControlledRy {
            controls: vec![0],
            target: 1,
            angle: 1.234,
        };
        assert_eq!(apply_gate(&s0, &g).unwrap(), s0);
    }

    #[test]
    fn cnot_uses_lsb_convention() {
        // |01> (qubit 0 set) -> CNOT(0 -> 1) -> |11> = index 3
        let s = apply_gate(&zero_state(2).unwrap(), &Gate::X(0)).unwrap();
        let s = apply_gate(&s, &Gate::Cnot { control: 0, target: 1 }).unwrap();
        assert_eq!(s.probability(3), 1.0);
    }

    #[test]
    fn rz_phases() {
        let s = apply_gate(&zero_state(1).unwrap(), &Gate::H(0)).unwrap();
        let s = apply_gate(&s, &Gate::Rz { target: 0, angle: PI }).unwrap();
        let a = s.amplitudes();
        assert!((a[0] - Complex64::new(0.0, -FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((a[1] - Complex64::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn bad_indices() {
        let s = zero_state(2).unwrap();
        assert!(matches!(apply_gate(&s, &Gate::X(2)), Err(Error::Index(_))));
        assert!(matches!(
            apply_gate(&s, &Gate::Cnot { control: 1, target: 1 }),
            Err(Error::Index(_))
        ));
        let g = Gate::ControlledRy {
            controls: vec![],
            target: 0,
            angle: 0.1,
        };
        assert!(matches!(apply_gate(&s, &g), Err(Error::Index(_))));
    }
}
