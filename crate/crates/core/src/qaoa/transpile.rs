use std::f64::consts::FRAC_PI_2;

use super::{CircuitIR, Gate};

/// Rewrites every `ZZ(chi)` as `Ry(-pi/2)^2 . XX(chi) . Ry(pi/2)^2` in time
/// order, leaving a circuit over `Rx`, `Ry`, `Rz` and `XX` only.
pub fn transpile_native(circuit: &CircuitIR) -> CircuitIR {
    let mut gates = Vec::with_capacity(circuit.gates().len());
    for &g in circuit.gates() {
        match g {
            Gate::Zz { a, b, angle } => {
                gates.push(Gate::Ry { qubit: a, angle: -FRAC_PI_2 });
                gates.push(Gate::Ry { qubit: b, angle: -FRAC_PI_2 });
                gates.push(Gate::Xx { a, b, angle });
                gates.push(Gate::Ry { qubit: a, angle: FRAC_PI_2 });
                gates.push(Gate::Ry { qubit: b, angle: FRAC_PI_2 });
            }
            other => gates.push(other),
        }
    }
    CircuitIR::with_gates(circuit.n(), gates).expect("qubits already validated")
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::qaoa::apply_circuit;

    fn unitary(c: &CircuitIR) -> Vec<Vec<Complex64>> {
        let dim = 1 << c.n();
        (0..dim)
            .map(|col| {
                let mut s = vec![Complex64::new(0.0, 0.0); dim];
                s[col] = Complex64::new(1.0, 0.0);
                apply_circuit(c, &mut s).unwrap();
                s
            })
            .collect()
    }

    #[test]
    fn zz_equals_conjugated_xx() {
        let chi = 0.3;
        let zz = CircuitIR::with_gates(2, vec![Gate::Zz { a: 1, b: 2, angle: chi }]).unwrap();
        let native = transpile_native(&zz);
        assert!(native.gates().iter().all(|g| !matches!(g, Gate::Zz { .. })));
        let u = unitary(&native);
        // exp(-i chi Z(x)Z) is diagonal with phases e^{-i chi}, e^{i chi}, e^{i chi}, e^{-i chi}
        let expect = [-chi, chi, chi, -chi];
        let global = u[0][0] / Complex64::from_polar(1.0, expect[0]);
        for (col, column) in u.iter().enumerate() {
            for (row, &x) in column.iter().enumerate() {
                let want = if row == col {
                    global * Complex64::from_polar(1.0, expect[row])
                } else {
                    Complex64::new(0.0, 0.0)
                };
                assert!((x - want).norm() < 1e-12, "({row},{col})");
            }
        }
    }

    #[test]
    fn circuit_without_zz_is_unchanged() {
        let c = CircuitIR::with_gates(
            2,
            vec![Gate::Ry { qubit: 1, angle: 0.2 }, Gate::Rz { qubit: 2, angle: 0.4 }],
        )
        .unwrap();
        assert_eq!(transpile_native(&c), c);
    }
}
