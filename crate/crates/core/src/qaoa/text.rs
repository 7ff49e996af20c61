//! Plain-text circuit interchange format.
//!
//! ```text
//! file   := header gate*
//! header := "qaoa-circuit 1" NL "qubits" SP <n> NL
//! gate   := ("Rx" | "Ry" | "Rz") SP <q> SP <angle> NL
//!         | ("ZZ" | "XX") SP <q> SP <q> SP <angle> NL
//! ```
//!
//! Qubits are 1-based, angles are radians written with the shortest decimal
//! form that parses back to the same `f64`. All qubits are measured after the
//! last gate. Blank lines and lines starting with `#` are skipped when parsing.

use std::fmt::Write as _;

use super::{CircuitIR, Gate};
use crate::error::{Error, Result};

const MAGIC: &str = "qaoa-circuit 1";

pub fn export_circuit_text(circuit: &CircuitIR) -> String {
    let mut out = format!("{MAGIC}\nqubits {}\n", circuit.n());
    for g in circuit.gates() {
        match *g {
            Gate::Rx { qubit, angle } | Gate::Ry { qubit, angle } | Gate::Rz { qubit, angle } => {
                writeln!(out, "{} {qubit} {angle}", g.name()).unwrap();
            }
            Gate::Zz { a, b, angle } | Gate::Xx { a, b, angle } => {
                writeln!(out, "{} {a} {b} {angle}", g.name()).unwrap();
            }
        }
    }
    out
}

pub fn parse_circuit_text(text: &str) -> Result<CircuitIR> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, message: String| Error::CircuitParse { line, message };

    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        Some((line, l)) => return Err(err(line, format!("expected {MAGIC:?}, found {l:?}"))),
        None => return Err(err(0, "empty input".into())),
    }
    let n = match lines.next() {
        Some((line, l)) => {
            let rest = l
                .strip_prefix("qubits ")
                .ok_or_else(|| err(line, format!("expected qubit count, found {l:?}")))?;
            rest.trim()
                .parse::<usize>()
                .map_err(|e| err(line, format!("bad qubit count: {e}")))?
        }
        None => return Err(err(0, "missing qubit count".into())),
    };

    let mut circuit = CircuitIR::new(n);
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let qubit = |s: &str| s.parse::<usize>().map_err(|e| err(line, format!("bad qubit {s:?}: {e}")));
        let angle = |s: &str| s.parse::<f64>().map_err(|e| err(line, format!("bad angle {s:?}: {e}")));
        let gate = match fields.as_slice() {
            ["Rx", q, a] => Gate::Rx { qubit: qubit(q)?, angle: angle(a)? },
            ["Ry", q, a] => Gate::Ry { qubit: qubit(q)?, angle: angle(a)? },
            ["Rz", q, a] => Gate::Rz { qubit: qubit(q)?, angle: angle(a)? },
            ["ZZ", p, q, a] => Gate::Zz { a: qubit(p)?, b: qubit(q)?, angle: angle(a)? },
            ["XX", p, q, a] => Gate::Xx { a: qubit(p)?, b: qubit(q)?, angle: angle(a)? },
            _ => return Err(err(line, format!("unrecognized gate line {l:?}"))),
        };
        circuit.push(gate).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(circuit)
}
