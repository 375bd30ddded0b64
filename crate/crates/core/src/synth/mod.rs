//! Exact synthesis of small unitaries over real orthogonal gates and CCZ.
//!
//! The pipeline is `decompose_su2m` (single-qubit gates and CZ), then
//! [`lower`](crate::rewrite::lower) onto the target profile, then a dense check
//! of the induced operator with the catalyst in `|+i>` and the ancilla in `|0>`.

mod decompose;
mod euler;
mod haar;
mod matrix_file;

use thiserror::Error;

use crate::ir::{Circuit, GateSetProfile};
use crate::rewrite::{lower, measure_against, LowerError, LoweredCircuit};
use crate::sim::{DenseUnitary, SimError};

pub use decompose::{decompose_su2m, MAX_SYNTH_QUBITS};
pub use euler::{euler_xyx, EulerXYX};
pub use haar::haar_unitary;
pub use matrix_file::{parse_matrix_file, serialize_matrix_file};

/// Largest phase-aligned distance a synthesized circuit may have.
pub const SYNTH_TOLERANCE: f64 = 1e-8;
/// Largest catalyst overlap deficit a synthesized circuit may have.
pub const CATALYST_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("synthesis supports 1 to {MAX_SYNTH_QUBITS} qubits, got {0}")]
    UnsupportedSize(usize),
    #[error("matrix is not unitary: ||U^dag U - I||_F = {0:e}")]
    NotUnitary(f64),
    #[error("matrix file line {line}: {message}")]
    MatrixFile { line: usize, message: String },
    #[error("synthesized circuit misses the target: distance {distance:e}, catalyst deficit {deficit:e}")]
    VerificationFailed { distance: f64, deficit: f64 },
    #[error(transparent)]
    Lower(#[from] LowerError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub lowered: LoweredCircuit,
    /// Intermediate circuit over single-qubit gates and CZ.
    pub decomposed: Circuit,
    pub target_dim: usize,
    pub distance: f64,
    pub catalyst_deficit: f64,
}

/// Synthesizes `u` over `{H, X, Z, RY, CCZ}` with one catalyst and one ancilla.
pub fn synthesize(u: &DenseUnitary) -> Result<SynthesisResult, SynthError> {
    synthesize_to(u, GateSetProfile::RealO2Ccz)
}

/// As [`synthesize`], for any profile the rewriter can reach.
pub fn synthesize_to(
    u: &DenseUnitary,
    target: GateSetProfile,
) -> Result<SynthesisResult, SynthError> {
    let decomposed = decompose_su2m(u)?;
    let lowered = lower(&decomposed, target)?;
    let check = measure_against(u, &lowered, SYNTH_TOLERANCE)?;
    if !(check.distance <= SYNTH_TOLERANCE && check.catalyst_deficit <= CATALYST_TOLERANCE) {
        return Err(SynthError::VerificationFailed {
            distance: check.distance,
            deficit: check.catalyst_deficit,
        });
    }
    Ok(SynthesisResult {
        lowered,
        decomposed,
        target_dim: u.dim(),
        distance: check.distance,
        catalyst_deficit: check.catalyst_deficit,
    })
}
