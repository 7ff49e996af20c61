//! Dense statevector emulation. Amplitude index `k` holds the basis state
//! whose binary expansion lists qubit 1 first (most significant bit).

use num_complex::Complex64;

use super::{Bitstring, CircuitIR, Gate};
use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 24;

/// Output probabilities over all `2^n` bitstrings.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    n: usize,
    probabilities: Vec<f64>,
}

impl Distribution {
    pub fn new(n: usize, probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.len() != 1usize << n {
            return Err(Error::InvalidInput(format!(
                "{} probabilities for {n} qubits",
                probabilities.len()
            )));
        }
        if probabilities.iter().any(|&p| !(p >= 0.0)) {
            return Err(Error::InvalidInput("negative or NaN probability".into()));
        }
        Ok(Self { n, probabilities })
    }

    pub fn uniform(n: usize) -> Self {
        let dim = 1usize << n;
        Self {
            n,
            probabilities: vec![1.0 / dim as f64; dim],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, b: &Bitstring) -> f64 {
        self.probabilities[b.index()]
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

fn mask(n: usize, qubit: usize) -> usize {
    1 << (n - qubit)
}

/// Applies `[[m00, m01], [m10, m11]]` to `qubit`.
pub(crate) fn apply_single(state: &mut [Complex64], n: usize, qubit: usize, m: [[Complex64; 2]; 2]) {
    let bit = mask(n, qubit);
    for i in 0..state.len() {
        if i & bit == 0 {
            let a = state[i];
            let b = state[i | bit];
            state[i] = m[0][0] * a + m[0][1] * b;
            state[i | bit] = m[1][0] * a + m[1][1] * b;
        }
    }
}

/// `exp(-i theta/2 (cos(phi) X + sin(phi) Y))`.
pub(crate) fn r_phi(phi: f64, theta: f64) -> [[Complex64; 2]; 2] {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = (theta / 2.0).sin();
    let minus_i = Complex64::new(0.0, -1.0);
    [
        [c, minus_i * s * Complex64::from_polar(1.0, -phi)],
        [minus_i * s * Complex64::from_polar(1.0, phi), c],
    ]
}

fn apply_gate(state: &mut [Complex64], n: usize, gate: &Gate) {
    match *gate {
        Gate::Rx { qubit, angle } => apply_single(state, n, qubit, r_phi(0.0, angle)),
        Gate::Ry { qubit, angle } => {
            apply_single(state, n, qubit, r_phi(std::f64::consts::FRAC_PI_2, angle))
        }
        Gate::Rz { qubit, angle } => {
            let bit = mask(n, qubit);
            let phase = Complex64::from_polar(1.0, angle);
            for (i, amp) in state.iter_mut().enumerate() {
                if i & bit != 0 {
                    *amp *= phase;
                }
            }
        }
        Gate::Zz { a, b, angle } => {
            let (ma, mb) = (mask(n, a), mask(n, b));
            let same = Complex64::from_polar(1.0, -angle);
            let differ = Complex64::from_polar(1.0, angle);
            for (i, amp) in state.iter_mut().enumerate() {
                let parity = (i & ma != 0) ^ (i & mb != 0);
                *amp *= if parity { differ } else { same };
            }
        }
        Gate::Xx { a, b, angle } => {
            let flip = mask(n, a) | mask(n, b);
            let c = Complex64::new(angle.cos(), 0.0);
            let s = Complex64::new(0.0, -angle.sin());
            for i in 0..state.len() {
                let j = i ^ flip;
                if i < j {
                    let (x, y) = (state[i], state[j]);
                    state[i] = c * x + s * y;
                    state[j] = s * x + c * y;
                }
            }
        }
    }
}

/// Runs `circuit` on an arbitrary initial state in place.
pub fn apply_circuit(circuit: &CircuitIR, state: &mut [Complex64]) -> Result<()> {
    let n = circuit.n();
    if state.len() != 1usize << n {
        return Err(Error::InvalidInput(format!(
            "state of length {} for {n} qubits",
            state.len()
        )));
    }
    for g in circuit.gates() {
        apply_gate(state, n, g);
    }
    Ok(())
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            requested: n,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Final state of `circuit` applied to `|0...0>`.
pub fn final_state(circuit: &CircuitIR) -> Result<Vec<Complex64>> {
    check_size(circuit.n())?;
    let mut state = vec![Complex64::new(0.0, 0.0); 1usize << circuit.n()];
    state[0] = Complex64::new(1.0, 0.0);
    apply_circuit(circuit, &mut state)?;
    Ok(state)
}

/// Exact output distribution of `circuit` applied to `|0...0>`.
pub fn simulate_statevector(circuit: &CircuitIR) -> Result<Distribution> {
    let state = final_state(circuit)?;
    Ok(Distribution {
        n: circuit.n(),
        probabilities: state.iter().map(|a| a.norm_sqr()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qaoa::{qubo_to_circuit, MixerSign, QaoaAngles};

    #[test]
    fn zero_beta_is_uniform() {
        let q = vec![vec![0.3, -0.7, 1.0], vec![0.0, -1.2, 0.4], vec![0.0, 0.0, 0.9]];
        for mixer in [MixerSign::Minimizing, MixerSign::Literal] {
            let c = qubo_to_circuit(&q, &QaoaAngles::new(2.64, 0.0), mixer).unwrap();
            let d = simulate_statevector(&c).unwrap();
            for &p in d.probabilities() {
                assert!((p - 0.125).abs() < 1e-12);
            }
        }
    }

    // With one qubit the circuit is Rx(a) Rz(theta) |+>; multiplying the 2x2
    // matrices by hand gives p(0) = (1 + sin(a) sin(theta)) / 2 with a the Rx angle.
    #[test]
    fn single_qubit_closed_form() {
        for &(gamma, beta, q) in &[(2.64, 0.33, 1.0), (1.0, -0.7, -0.4), (8.0 / 3.0, 1.1, 0.25)] {
            let c = qubo_to_circuit(&[vec![q]], &QaoaAngles::new(gamma, beta), MixerSign::Literal).unwrap();
            let d = simulate_statevector(&c).unwrap();
            let expect = (1.0 + (2.0 * beta).sin() * (gamma * q / 4.0).sin()) / 2.0;
            assert!((d.probabilities()[0] - expect).abs() < 1e-12);
        }
    }

    // An X rotation by pi on qubit 1 only must light up "10", index 2.
    #[test]
    fn bit_order_is_detectable() {
        let c = CircuitIR::with_gates(2, vec![Gate::Rx { qubit: 1, angle: std::f64::consts::PI }]).unwrap();
        let d = simulate_statevector(&c).unwrap();
        assert!((d.probabilities()[2] - 1.0).abs() < 1e-12);
        assert!(d.probabilities()[1].abs() < 1e-12);
        assert!((d.probability(&"10".parse().unwrap()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oversize_rejected() {
        let c = CircuitIR::new(MAX_QUBITS + 1);
        assert!(matches!(simulate_statevector(&c), Err(Error::TooManyQubits { .. })));
    }
}
