use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::QaoaAngles;
use crate::error::{Error, Result};

/// Gate set of the compiled circuits. Qubits are numbered from 1.
///
/// * `Rx`, `Ry`: `exp(-i sigma theta / 2)` with `sigma = X` or `Y`.
/// * `Rz(theta) = exp(i theta |1><1|)`.
/// * `Zz(chi) = exp(-i chi Z (x) Z)`, `Xx(chi) = exp(-i chi X (x) X)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    Rx { qubit: usize, angle: f64 },
    Ry { qubit: usize, angle: f64 },
    Rz { qubit: usize, angle: f64 },
    Zz { a: usize, b: usize, angle: f64 },
    Xx { a: usize, b: usize, angle: f64 },
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::Rx { .. } => "Rx",
            Gate::Ry { .. } => "Ry",
            Gate::Rz { .. } => "Rz",
            Gate::Zz { .. } => "ZZ",
            Gate::Xx { .. } => "XX",
        }
    }

    pub fn angle(&self) -> f64 {
        match *self {
            Gate::Rx { angle, .. }
            | Gate::Ry { angle, .. }
            | Gate::Rz { angle, .. }
            | Gate::Zz { angle, .. }
            | Gate::Xx { angle, .. } => angle,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Rx { qubit, .. } | Gate::Ry { qubit, .. } | Gate::Rz { qubit, .. } => vec![qubit],
            Gate::Zz { a, b, .. } | Gate::Xx { a, b, .. } => vec![a, b],
        }
    }
}

/// Ordered gate list on `n` qubits, all measured at the end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitIR {
    n: usize,
    gates: Vec<Gate>,
}

impl CircuitIR {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn with_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        if qs.iter().any(|&q| q == 0 || q > self.n) {
            return Err(Error::InvalidInput(format!(
                "{} on qubits {qs:?} outside 1..={}",
                gate.name(),
                self.n
            )));
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidInput(format!("{} on a repeated qubit", gate.name())));
        }
        self.gates.push(gate);
        Ok(())
    }

    /// `theta_i` of the `Rz` on qubit `q`, zero when the gate was omitted.
    pub fn rz_angle(&self, q: usize) -> f64 {
        self.gates
            .iter()
            .find_map(|g| match *g {
                Gate::Rz { qubit, angle } if qubit == q => Some(angle),
                _ => None,
            })
            .unwrap_or(0.0)
    }

    /// `chi_ij` of the `ZZ` on qubits `i < j`, zero when the gate was omitted.
    pub fn zz_angle(&self, i: usize, j: usize) -> f64 {
        self.gates
            .iter()
            .find_map(|g| match *g {
                Gate::Zz { a, b, angle } if (a, b) == (i, j) || (a, b) == (j, i) => Some(angle),
                _ => None,
            })
            .unwrap_or(0.0)
    }
}

/// Sign of the mixing rotation emitted for angle `beta`.
///
/// With the gate conventions of [`Gate`], the phase layer is
/// `exp(-i gamma H / 8)` for the normalized spin matrix `H`. Probability then
/// flows towards low-energy strings only when the mixer turns the other way,
/// so [`MixerSign::Minimizing`] emits `Rx(-2 beta)`. [`MixerSign::Literal`]
/// emits `Rx(2 beta)`; with positive `beta` that circuit concentrates on
/// high-energy strings instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MixerSign {
    #[default]
    Minimizing,
    Literal,
}

impl MixerSign {
    pub fn rx_angle(self, beta: f64) -> f64 {
        match self {
            MixerSign::Minimizing => -2.0 * beta,
            MixerSign::Literal => 2.0 * beta,
        }
    }
}

/// Compiles a normalized upper-triangular spin matrix into the QAOA layer.
///
/// Gate order: `Ry(pi/2)` on every qubit, `ZZ(gamma/8 * q_ij)` for each
/// nonzero coupling in lexicographic pair order, `Rz(gamma/4 * q_ii)` for
/// each nonzero field, then the mixing `Rx` on every qubit.
pub fn qubo_to_circuit(qnorm: &[Vec<f64>], angles: &QaoaAngles, mixer: MixerSign) -> Result<CircuitIR> {
    let n = qnorm.len();
    if qnorm.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("QUBO matrix is not square".into()));
    }
    let mut c = CircuitIR::new(n);
    for q in 1..=n {
        c.push(Gate::Ry { qubit: q, angle: FRAC_PI_2 })?;
    }
    for i in 0..n {
        for j in i + 1..n {
            let chi = angles.gamma / 8.0 * qnorm[i][j];
            if chi != 0.0 {
                c.push(Gate::Zz { a: i + 1, b: j + 1, angle: chi })?;
            }
        }
    }
    for (i, row) in qnorm.iter().enumerate() {
        let theta = angles.gamma / 4.0 * row[i];
        if theta != 0.0 {
            c.push(Gate::Rz { qubit: i + 1, angle: theta })?;
        }
    }
    let rx = mixer.rx_angle(angles.beta);
    for q in 1..=n {
        c.push(Gate::Rx { qubit: q, angle: rx })?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_only_has_rotation_layers() {
        let q = vec![vec![0.0; 3]; 3];
        let c = qubo_to_circuit(&q, &QaoaAngles::REFERENCE, MixerSign::Literal).unwrap();
        let names: Vec<&str> = c.gates().iter().map(Gate::name).collect();
        assert_eq!(names, ["Ry", "Ry", "Ry", "Rx", "Rx", "Rx"]);
        assert!((c.gates()[3].angle() - 0.66).abs() < 1e-15);
    }

    #[test]
    fn angle_mapping() {
        let q = vec![vec![-0.5, 0.25], vec![0.0, 1.0]];
        let c = qubo_to_circuit(&q, &QaoaAngles::new(2.0, 0.1), MixerSign::Minimizing).unwrap();
        assert_eq!(c.zz_angle(1, 2), 2.0 / 8.0 * 0.25);
        assert_eq!(c.rz_angle(1), -0.25);
        assert_eq!(c.rz_angle(2), 0.5);
        assert_eq!(c.gates().last().unwrap().angle(), -0.2);
    }

    #[test]
    fn push_validates_qubits() {
        let mut c = CircuitIR::new(2);
        assert!(c.push(Gate::Rz { qubit: 3, angle: 0.1 }).is_err());
        assert!(c.push(Gate::Zz { a: 1, b: 1, angle: 0.1 }).is_err());
        assert!(c.push(Gate::Xx { a: 2, b: 1, angle: 0.1 }).is_ok());
    }
}
