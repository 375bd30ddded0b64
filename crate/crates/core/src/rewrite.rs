//! Lowering passes onto restricted gate sets.
//!
//! Each source gate is rewritten by the first rule that applies:
//!
//! * already admitted by the target: copied;
//! * `CS`  -> `H(c) CCZ(a,b,c) H(c) CCZ(a,b,c)`;
//! * `S`   -> `H(c) CZ(d,c) H(c) CZ(d,c)`, each CZ rewritten in turn;
//! * `SDG` -> three S rewrites;
//! * `RX(t)` -> `S`, `RY(t)`, `SDG`;
//! * `RZ(t)` -> `H`, `RX(t)`, `H`;
//! * `CZ`  -> `CCZ(anc, a, b)` with the ancilla held at `|1>`.
//!
//! `c` is a single `|+i>` catalyst shared by every gadget and `anc` a single
//! ancilla that starts in `|0>` and gets one `X` just before its first use.
//! Data qubits keep their indices; the catalyst and then the ancilla are
//! appended after them.

use serde::Serialize;
use thiserror::Error;

use crate::ir::{Circuit, GateApp, GateCounts, GateKind, GateSetProfile, GateTag};
use crate::sim::{
    circuit_unitary, phase_aligned_distance, project_environment, DenseUnitary, EnvQubit,
    QubitState, SimError,
};

/// Largest source register `verify_lowering` accepts.
pub const MAX_VERIFY_DATA_QUBITS: usize = 4;
/// Largest lowered register `verify_lowering` accepts.
pub const MAX_VERIFY_TOTAL_QUBITS: usize = 6;
/// Distance and catalyst deficit a lowering must stay within.
pub const LOWERING_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum LowerError {
    #[error("gate {index} ({tag}) is not lowerable to {target}: {inner} has no rewrite")]
    NotLowerable {
        index: usize,
        tag: GateTag,
        inner: GateTag,
        target: GateSetProfile,
    },
    #[error(
        "verification needs <= {MAX_VERIFY_DATA_QUBITS} data and <= {MAX_VERIFY_TOTAL_QUBITS} total qubits, got {data} and {total}"
    )]
    TooLarge { data: usize, total: usize },
    #[error("lowered circuit has {lowered} data qubit(s) but the source has {source_qubits}")]
    Mismatch {
        source_qubits: usize,
        lowered: usize,
    },
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Debug, Clone)]
pub struct LoweredCircuit {
    pub circuit: Circuit,
    /// Starts and ends in `|+i>`.
    pub catalyst_qubit: Option<usize>,
    /// Ancilla wires with their initial states.
    pub ancilla_qubits: Vec<(usize, QubitState)>,
    /// `data_qubit_map[i]` is the lowered index of source qubit `i`.
    pub data_qubit_map: Vec<usize>,
    pub counts: GateCounts,
    pub target_profile: GateSetProfile,
    /// For each source gate, its tag and the number of CCZ gates it produced.
    pub ccz_by_source: Vec<(GateTag, usize)>,
}

impl LoweredCircuit {
    /// Catalyst and ancillas with the states they enter and leave in. The
    /// ancilla is flipped once and only ever used as a control, so it leaves
    /// as `|1>`.
    pub fn environment(&self) -> Vec<EnvQubit> {
        let mut env = Vec::new();
        if let Some(c) = self.catalyst_qubit {
            env.push(EnvQubit::catalyst(c, QubitState::PlusI));
        }
        for &(q, input) in &self.ancilla_qubits {
            let output = match input {
                QubitState::Zero => QubitState::One,
                other => other,
            };
            env.push(EnvQubit {
                qubit: q,
                input,
                output,
            });
        }
        env
    }

    pub fn num_data_qubits(&self) -> usize {
        self.data_qubit_map.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Wire {
    Data(usize),
    Catalyst,
    Ancilla,
}

type Op = (GateKind, Vec<Wire>);

fn expand(
    kind: GateKind,
    wires: &[Wire],
    target: GateSetProfile,
    out: &mut Vec<Op>,
) -> Result<(), GateTag> {
    let tag = kind.tag();
    if target.admits(tag) {
        out.push((kind, wires.to_vec()));
        return Ok(());
    }
    let cat = Wire::Catalyst;
    match kind {
        GateKind::Cs if target.admits(GateTag::H) && target.admits(GateTag::Ccz) => {
            let (a, b) = (wires[0], wires[1]);
            for _ in 0..2 {
                out.push((GateKind::H, vec![cat]));
                out.push((GateKind::Ccz, vec![a, b, cat]));
            }
        }
        GateKind::S => {
            let d = wires[0];
            for _ in 0..2 {
                expand(GateKind::H, &[cat], target, out)?;
                expand(GateKind::Cz, &[d, cat], target, out)?;
            }
        }
        GateKind::Sdg => {
            for _ in 0..3 {
                expand(GateKind::S, wires, target, out)?;
            }
        }
        GateKind::Rx(theta) => {
            expand(GateKind::S, wires, target, out)?;
            expand(GateKind::Ry(theta), wires, target, out)?;
            expand(GateKind::Sdg, wires, target, out)?;
        }
        GateKind::Rz(theta) => {
            expand(GateKind::H, wires, target, out)?;
            expand(GateKind::Rx(theta), wires, target, out)?;
            expand(GateKind::H, wires, target, out)?;
        }
        GateKind::Cz if target.admits(GateTag::Ccz) && target.admits(GateTag::X) => {
            out.push((GateKind::Ccz, vec![Wire::Ancilla, wires[0], wires[1]]));
        }
        _ => return Err(tag),
    }
    Ok(())
}

/// Rewrites `c` so that every gate is admitted by `target`.
pub fn lower(c: &Circuit, target: GateSetProfile) -> Result<LoweredCircuit, LowerError> {
    let n = c.num_qubits();
    let mut ops: Vec<Op> = Vec::new();
    let mut ccz_by_source = Vec::with_capacity(c.len());
    for (index, g) in c.gates().iter().enumerate() {
        let before = ops.len();
        let wires: Vec<Wire> = g.operands().iter().map(|&q| Wire::Data(q)).collect();
        expand(g.kind(), &wires, target, &mut ops).map_err(|inner| LowerError::NotLowerable {
            index,
            tag: g.tag(),
            inner,
            target,
        })?;
        let ccz = ops[before..]
            .iter()
            .filter(|(k, _)| *k == GateKind::Ccz)
            .count();
        ccz_by_source.push((g.tag(), ccz));
    }

    let uses = |w: Wire| ops.iter().any(|(_, ws)| ws.contains(&w));
    let catalyst_qubit = uses(Wire::Catalyst).then_some(n);
    let ancilla_qubit = uses(Wire::Ancilla).then(|| n + usize::from(catalyst_qubit.is_some()));
    let total = n + usize::from(catalyst_qubit.is_some()) + usize::from(ancilla_qubit.is_some());

    let resolve = |w: Wire| match w {
        Wire::Data(q) => q,
        Wire::Catalyst => catalyst_qubit.expect("catalyst allocated"),
        Wire::Ancilla => ancilla_qubit.expect("ancilla allocated"),
    };
    let mut circuit = Circuit::new(total).expect("non-empty register");
    let mut ancilla_ready = false;
    for (kind, ws) in &ops {
        if !ancilla_ready && ws.contains(&Wire::Ancilla) {
            circuit.push_unchecked(GateApp::one(GateKind::X, resolve(Wire::Ancilla)));
            ancilla_ready = true;
        }
        let operands = ws.iter().map(|&w| resolve(w)).collect();
        circuit
            .push(GateApp::new(*kind, operands).expect("rule emits valid gates"))
            .expect("operands within lowered register");
    }

    Ok(LoweredCircuit {
        counts: circuit.gate_counts(),
        circuit,
        catalyst_qubit,
        ancilla_qubits: ancilla_qubit
            .map(|q| vec![(q, QubitState::Zero)])
            .unwrap_or_default(),
        data_qubit_map: (0..n).collect(),
        target_profile: target,
        ccz_by_source,
    })
}

/// Resource and gate-count summary of a lowering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub counts: GateCounts,
    pub catalyst: bool,
    pub ancilla: usize,
    /// Mean CCZ produced per source CS gate; `None` without CS gates.
    pub ccz_per_cs: Option<f64>,
    /// Mean CCZ produced per source S gate; `None` without S gates.
    pub ccz_per_s: Option<f64>,
    pub notes: Vec<String>,
}

impl CountReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("count report serializes")
    }
}

const REPORT_NOTES: [&str; 3] = [
    "counts are taken from the lowered circuit as emitted; no cancellation pass is applied",
    "SDG lowers to three S gadgets, RX to S RY SDG and RZ to H RX H",
    "CCZ costs of ancilla-based constructions built elsewhere are not measured by this tool",
];

pub fn count_report(lc: &LoweredCircuit) -> CountReport {
    let per = |tag: GateTag| {
        let hits: Vec<usize> = lc
            .ccz_by_source
            .iter()
            .filter(|(t, _)| *t == tag)
            .map(|&(_, n)| n)
            .collect();
        (!hits.is_empty()).then(|| hits.iter().sum::<usize>() as f64 / hits.len() as f64)
    };
    CountReport {
        counts: lc.counts,
        catalyst: lc.catalyst_qubit.is_some(),
        ancilla: lc.ancilla_qubits.len(),
        ccz_per_cs: per(GateTag::Cs),
        ccz_per_s: per(GateTag::S),
        notes: REPORT_NOTES.iter().map(|s| s.to_string()).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoweringCheck {
    pub ok: bool,
    /// Phase-aligned distance between the induced and source operators.
    pub distance: f64,
    pub catalyst_deficit: f64,
    pub residual_norm: f64,
}

/// Simulates `lc` with its catalyst and ancillas in their declared states and
/// compares the induced data operator with `source`.
pub fn verify_lowering(source: &Circuit, lc: &LoweredCircuit) -> Result<LoweringCheck, LowerError> {
    let data = source.num_qubits();
    let total = lc.circuit.num_qubits();
    if data > MAX_VERIFY_DATA_QUBITS || total > MAX_VERIFY_TOTAL_QUBITS {
        return Err(LowerError::TooLarge { data, total });
    }
    let target = circuit_unitary(source)?;
    measure_against(&target, lc, LOWERING_TOLERANCE)
}

/// Compares `lc`'s induced operator with a target unitary at tolerance `tol`.
pub fn measure_against(
    target: &DenseUnitary,
    lc: &LoweredCircuit,
    tol: f64,
) -> Result<LoweringCheck, LowerError> {
    if lc.num_data_qubits() != target.num_qubits() {
        return Err(LowerError::Mismatch {
            source_qubits: target.num_qubits(),
            lowered: lc.num_data_qubits(),
        });
    }
    let env = lc.environment();
    let (induced, deficit, residual) = if env.is_empty() {
        (circuit_unitary(&lc.circuit)?, 0.0, 0.0)
    } else {
        let p = project_environment(&circuit_unitary(&lc.circuit)?, &env)?;
        (p.induced, p.overlap_deficit, p.residual_norm)
    };
    let distance = phase_aligned_distance(&induced, target)?;
    Ok(LoweringCheck {
        ok: distance <= tol && deficit <= tol,
        distance,
        catalyst_deficit: deficit,
        residual_norm: residual,
    })
}
