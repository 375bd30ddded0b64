//! Circuit intermediate representation.
//!
//! A [`Circuit`] is a qubit count plus a list of [`GateApp`]s in execution
//! order: index 0 is applied first. A product written right-to-left as
//! `CCZ . H . CCZ . H` is therefore stored as `[H, CCZ, H, CCZ]`.

mod counts;
mod gate;
mod profile;
mod text;

pub use counts::GateCounts;
pub use gate::{GateApp, GateKind, GateTag};
pub use profile::{GateSetProfile, Violation};
pub use text::{format_angle, parse_circuit, serialize_circuit};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("{0} requires an angle")]
    MissingAngle(GateTag),
    #[error("{0} does not take an angle")]
    UnexpectedAngle(GateTag),
    #[error("{0} angle must be finite")]
    NonFiniteAngle(GateTag),
    #[error("{tag} takes {expected} operand(s), found {found}")]
    WrongOperandCount {
        tag: GateTag,
        expected: usize,
        found: usize,
    },
    #[error("duplicate operand qubit {0}")]
    DuplicateOperand(usize),
    #[error("operand {qubit} out of range for {num_qubits} qubit(s)")]
    OperandOutOfRange { qubit: usize, num_qubits: usize },
    #[error("a circuit needs at least one qubit")]
    NoQubits,
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<CircuitError>,
    },
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("missing `qubits <n>` header")]
    MissingHeader,
    #[error("bad qubit count `{0}`")]
    BadQubitCount(String),
    #[error("unparseable angle `{0}`")]
    BadAngle(String),
    #[error("unparseable qubit index `{0}`")]
    BadOperand(String),
    #[error("malformed gate line `{0}`")]
    Malformed(String),
}

impl CircuitError {
    fn at(self, line: usize) -> CircuitError {
        CircuitError::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<GateApp>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Circuit, CircuitError> {
        if num_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(Circuit {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(
        num_qubits: usize,
        gates: impl IntoIterator<Item = GateApp>,
    ) -> Result<Circuit, CircuitError> {
        let mut c = Circuit::new(num_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: GateApp) -> Result<(), CircuitError> {
        if let Some(&q) = gate.operands().iter().find(|&&q| q >= self.num_qubits) {
            return Err(CircuitError::OperandOutOfRange {
                qubit: q,
                num_qubits: self.num_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends a gate by kind and operands.
    pub fn add(&mut self, kind: GateKind, operands: &[usize]) -> Result<(), CircuitError> {
        self.push(GateApp::new(kind, operands.to_vec())?)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[GateApp] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate_counts(&self) -> GateCounts {
        GateCounts::of(self)
    }

    pub fn check_membership(&self, profile: GateSetProfile) -> Vec<Violation> {
        profile.violations(self)
    }

    /// Same qubit count and gates, with symmetric gates compared set-wise.
    pub fn acts_like(&self, other: &Circuit) -> bool {
        self.num_qubits == other.num_qubits
            && self.gates.len() == other.gates.len()
            && self
                .gates
                .iter()
                .zip(&other.gates)
                .all(|(a, b)| a.acts_like(b))
    }

    /// Re-targets every gate through `map` onto a circuit of `num_qubits`.
    pub fn remapped(
        &self,
        num_qubits: usize,
        map: impl Fn(usize) -> usize,
    ) -> Result<Circuit, CircuitError> {
        let mut out = Circuit::new(num_qubits)?;
        for g in &self.gates {
            let ops = g.operands().iter().map(|&q| map(q)).collect();
            out.push(GateApp::new(g.kind(), ops)?)?;
        }
        Ok(out)
    }

    pub(crate) fn push_unchecked(&mut self, gate: GateApp) {
        debug_assert!(gate.operands().iter().all(|&q| q < self.num_qubits));
        self.gates.push(gate);
    }
}

pub fn gate_counts(c: &Circuit) -> GateCounts {
    GateCounts::of(c)
}

pub fn check_membership(c: &Circuit, profile: GateSetProfile) -> Vec<Violation> {
    profile.violations(c)
}
