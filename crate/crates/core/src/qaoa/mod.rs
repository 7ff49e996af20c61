//! Fixed-angle single-layer QAOA: compilation of normalized QUBOs into
//! circuits, exact emulation, sampling, and training of the shared angles.

mod bitstring;
mod circuit;
mod sampling;
mod statevector;
mod text;
mod training;
mod transpile;

pub use bitstring::Bitstring;
pub use circuit::{qubo_to_circuit, CircuitIR, Gate, MixerSign};
pub use sampling::{sample, sample_uniform, sample_uniform_with, sample_with};
pub use statevector::{apply_circuit, final_state, simulate_statevector, Distribution, MAX_QUBITS};
pub use text::{export_circuit_text, parse_circuit_text};
pub use training::{
    ratio_via_circuit, train_fixed_angles, TrainingConfig, TrainingInstance, TrainingMetric,
    TrainingOutcome,
};
pub use transpile::transpile_native;

use serde::{Deserialize, Serialize};

/// Problem angle `gamma` and mixing angle `beta` of the single QAOA layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QaoaAngles {
    pub gamma: f64,
    pub beta: f64,
}

impl QaoaAngles {
    /// Default angles of the six-qubit configuration.
    pub const REFERENCE: QaoaAngles = QaoaAngles {
        gamma: 8.0 / 3.0,
        beta: 0.33,
    };

    /// Alternative trained angles for the same family.
    pub const TRAINED: QaoaAngles = QaoaAngles {
        gamma: 2.64,
        beta: 0.33,
    };

    pub fn new(gamma: f64, beta: f64) -> Self {
        Self { gamma, beta }
    }

    /// Always 1: only single-layer circuits are built.
    pub fn layers(&self) -> usize {
        1
    }
}

impl Default for QaoaAngles {
    fn default() -> Self {
        Self::REFERENCE
    }
}
