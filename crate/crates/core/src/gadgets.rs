//! Catalytic gadget circuits.
//!
//! Every gadget borrows one catalyst qubit in `|+i>` and returns it untouched,
//! while a real (or real-orthogonal-plus-CCZ) circuit induces a complex gate
//! on the data qubits:
//!
//! | builder       | circuit (execution order)               | induced             |
//! |---------------|------------------------------------------|---------------------|
//! | `rz_gadget`   | `CRY(-2t)` data -> catalyst              | `e^{it/2} RZ(t)`    |
//! | `s_gadget`    | `H(c) CZ(d,c) H(c) CZ(d,c)`              | `S`                 |
//! | `cs_gadget`   | `H(c) CCZ(d1,d2,c) H(c) CCZ(d1,d2,c)`    | `CS` on `(d1, d2)`  |
//! | `s_via_prep`  | `|1>`-prep on a control wire, then `cs_gadget` | `S`           |

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::ir::{Circuit, CircuitError, GateApp, GateKind, GateSetProfile, GateTag};
use crate::sim::{
    circuit_unitary, gate_matrix, gates, project_environment, run, DenseUnitary, EnvQubit,
    QubitState, SimError, Statevector,
};

/// Error bound for a `|1>`-prep to count as correct.
pub const PREP_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("target qubit {target} out of range for {num_qubits} qubit(s)")]
    TargetOutOfRange { target: usize, num_qubits: usize },
    #[error("prep circuit does not map |0> to |1> on the target (max error {max_error:e})")]
    PrepFailed { max_error: f64 },
}

/// A non-data wire with a fixed entry state and a fixed exit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ancilla {
    pub qubit: usize,
    pub input: QubitState,
    pub output: QubitState,
}

#[derive(Debug, Clone)]
pub struct Gadget {
    pub circuit: Circuit,
    pub catalyst_qubit: usize,
    /// Ascending; `claimed_induced` acts on these in this order.
    pub data_qubits: Vec<usize>,
    pub ancilla: Option<Ancilla>,
    pub claimed_induced: DenseUnitary,
    /// Global phase of `claimed_induced` relative to the named target gate.
    pub claimed_phase: f64,
}

/// Outcome of simulating a gadget against its claim.
#[derive(Debug, Clone)]
pub struct GadgetCheck {
    pub induced: DenseUnitary,
    pub residual_norm: f64,
    pub unitarity_error: f64,
    /// `max |induced_ij - claimed_ij|`, no phase quotient.
    pub induced_error: f64,
    /// Worst entrywise error of `U(|cat>|psi>)` against `|cat> (x) claimed|psi>`
    /// over computational basis `|psi>`.
    pub output_error: f64,
    /// Smallest `<+i| rho_cat |+i>` over computational basis data inputs.
    pub min_catalyst_fidelity: f64,
    pub catalyst_overlap_deficit: f64,
}

impl GadgetCheck {
    pub fn is_catalytic(&self, tol: f64) -> bool {
        self.residual_norm <= tol && self.unitarity_error <= tol
    }
}

impl Gadget {
    pub fn environment(&self) -> Vec<EnvQubit> {
        let mut env = vec![EnvQubit::catalyst(self.catalyst_qubit, QubitState::PlusI)];
        if let Some(a) = self.ancilla {
            env.push(EnvQubit {
                qubit: a.qubit,
                input: a.input,
                output: a.output,
            });
        }
        env
    }

    pub fn check(&self) -> Result<GadgetCheck, SimError> {
        let u = circuit_unitary(&self.circuit)?;
        let env = self.environment();
        let projection = project_environment(&u, &env)?;
        let induced = projection.induced;

        let n = self.circuit.num_qubits();
        let mut output_error: f64 = 0.0;
        let mut min_fidelity: f64 = 1.0;
        for j in 0..self.claimed_induced.dim() {
            let input = self.product_input(j, |e| e.input, None);
            let expected = self.product_input(j, |e| e.output, Some(&self.claimed_induced));
            let out = run(&self.circuit, &input)?;
            debug_assert_eq!(out.num_qubits(), n);
            output_error = output_error.max(out.max_abs_diff(&expected));
            min_fidelity =
                min_fidelity.min(out.reduced_fidelity(self.catalyst_qubit, QubitState::PlusI));
        }

        Ok(GadgetCheck {
            induced_error: induced.max_abs_diff(&self.claimed_induced),
            unitarity_error: induced.unitarity_error(),
            residual_norm: projection.residual_norm,
            catalyst_overlap_deficit: projection.overlap_deficit,
            induced,
            output_error,
            min_catalyst_fidelity: min_fidelity,
        })
    }

    /// `env_state (x) op|j>` laid out on the full register; `op = None` means identity.
    fn product_input(
        &self,
        j: usize,
        pick: impl Fn(&EnvQubit) -> QubitState,
        op: Option<&DenseUnitary>,
    ) -> Statevector {
        let n = self.circuit.num_qubits();
        let env = self.environment();
        let d = self.data_qubits.len();
        let data_col: Vec<C64> = match op {
            Some(u) => u.matrix().column(j).iter().copied().collect(),
            None => (0..1 << d)
                .map(|i| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect(),
        };
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        for (idx, amp) in amps.iter_mut().enumerate() {
            let bit = |q: usize| idx >> (n - 1 - q) & 1;
            let env_amp: C64 = env
                .iter()
                .map(|e| pick(e).amplitudes()[bit(e.qubit)])
                .product();
            let data_idx = self
                .data_qubits
                .iter()
                .fold(0, |acc, &q| (acc << 1) | bit(q));
            *amp = env_amp * data_col[data_idx];
        }
        Statevector::from_amplitudes(amps).expect("power-of-two register")
    }
}

/// `CRY(-2 theta)` with the data qubit (1) controlling the catalyst (0).
pub fn rz_gadget(theta: f64) -> Gadget {
    let mut circuit = Circuit::new(2).expect("two qubits");
    circuit.push_unchecked(GateApp::two(GateKind::Cry(-2.0 * theta), 1, 0));
    let claimed =
        DenseUnitary::from_matrix2(&(gates::rz(theta) * C64::from_polar(1.0, theta / 2.0)));
    Gadget {
        circuit,
        catalyst_qubit: 0,
        data_qubits: vec![1],
        ancilla: None,
        claimed_induced: claimed,
        claimed_phase: theta / 2.0,
    }
}

/// `CZ . H . CZ . H` with H on the catalyst (0); induces S on qubit 1.
pub fn s_gadget() -> Gadget {
    let (cat, data) = (0, 1);
    let mut circuit = Circuit::new(2).expect("two qubits");
    for g in s_gadget_gates(cat, data) {
        circuit.push_unchecked(g);
    }
    Gadget {
        circuit,
        catalyst_qubit: cat,
        data_qubits: vec![data],
        ancilla: None,
        claimed_induced: gate_matrix(GateKind::S),
        claimed_phase: 0.0,
    }
}

/// `CCZ . H . CCZ . H` with H on the catalyst (0); induces CS on (1, 2).
pub fn cs_gadget() -> Gadget {
    let (cat, d1, d2) = (0, 1, 2);
    let mut circuit = Circuit::new(3).expect("three qubits");
    for g in cs_gadget_gates(cat, d1, d2) {
        circuit.push_unchecked(g);
    }
    Gadget {
        circuit,
        catalyst_qubit: cat,
        data_qubits: vec![d1, d2],
        ancilla: None,
        claimed_induced: gate_matrix(GateKind::Cs),
        claimed_phase: 0.0,
    }
}

pub(crate) fn s_gadget_gates(cat: usize, data: usize) -> [GateApp; 4] {
    [
        GateApp::one(GateKind::H, cat),
        GateApp::two(GateKind::Cz, data, cat),
        GateApp::one(GateKind::H, cat),
        GateApp::two(GateKind::Cz, data, cat),
    ]
}

pub(crate) fn cs_gadget_gates(cat: usize, d1: usize, d2: usize) -> [GateApp; 4] {
    [
        GateApp::one(GateKind::H, cat),
        GateApp::ccz(d1, d2, cat),
        GateApp::one(GateKind::H, cat),
        GateApp::ccz(d1, d2, cat),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrepCheck {
    pub passes: bool,
    /// Worst `|| out - e^{i phase} |1>|phi> ||` over basis `|phi>`.
    pub max_error: f64,
    pub gate_set_ok: bool,
    /// Common global phase, aligned on the first basis input.
    pub phase: f64,
    pub ccz_count: usize,
}

/// Checks that `c` takes `|0>_target (x) |phi>` to `|1>_target (x) |phi>` for every
/// computational basis `|phi>` on the other qubits, up to one shared phase.
pub fn verify_one_prep(c: &Circuit, target_qubit: usize) -> Result<PrepCheck, GadgetError> {
    let n = c.num_qubits();
    if target_qubit >= n {
        return Err(GadgetError::TargetOutOfRange {
            target: target_qubit,
            num_qubits: n,
        });
    }
    let target_bit = 1usize << (n - 1 - target_qubit);
    let others: Vec<usize> = (0..n).filter(|&q| q != target_qubit).collect();

    let mut phase = None;
    let mut max_error: f64 = 0.0;
    for phi in 0..1usize << others.len() {
        let idx = others
            .iter()
            .enumerate()
            .filter(|(j, _)| phi >> (others.len() - 1 - j) & 1 == 1)
            .fold(0, |acc, (_, &q)| acc | 1 << (n - 1 - q));
        let out = run(c, &Statevector::basis(n, idx))?;
        let expected = Statevector::basis(n, idx | target_bit);
        let phase = *phase.get_or_insert_with(|| {
            let overlap = expected.inner(&out);
            if overlap.norm() > 0.0 {
                overlap.arg()
            } else {
                0.0
            }
        });
        max_error = max_error.max(out.distance(&expected.scaled(C64::from_polar(1.0, phase))));
    }

    Ok(PrepCheck {
        passes: max_error <= PREP_TOLERANCE,
        max_error,
        gate_set_ok: c.check_membership(GateSetProfile::Hccz).is_empty(),
        phase: phase.unwrap_or(0.0),
        ccz_count: c.gate_counts()[GateTag::Ccz],
    })
}

/// Builds S from a verified `|1>`-prep and the CS gadget: the prepared wire
/// controls CS, leaving S on the data qubit.
///
/// The register has `max(prep qubits, 3)` wires. The prep target is the
/// control wire, the lowest other wire is the catalyst, and the rest are data
/// with S acting on the first of them.
pub fn s_via_prep(prep: &Circuit, target_qubit: usize) -> Result<Gadget, GadgetError> {
    let check = verify_one_prep(prep, target_qubit)?;
    if !check.passes {
        return Err(GadgetError::PrepFailed {
            max_error: check.max_error,
        });
    }
    let n = prep.num_qubits().max(3);
    let mut circuit = prep.remapped(n, |q| q)?;
    let mut rest = (0..n).filter(|&q| q != target_qubit);
    let cat = rest.next().expect("at least three wires");
    let data_qubits: Vec<usize> = rest.collect();
    let data = data_qubits[0];
    for g in cs_gadget_gates(cat, target_qubit, data) {
        circuit.push_unchecked(g);
    }

    let mut claimed = gate_matrix(GateKind::S);
    for _ in 1..data_qubits.len() {
        claimed = claimed.kron(&DenseUnitary::identity(1));
    }
    Ok(Gadget {
        circuit,
        catalyst_qubit: cat,
        data_qubits,
        ancilla: Some(Ancilla {
            qubit: target_qubit,
            input: QubitState::Zero,
            output: QubitState::One,
        }),
        claimed_induced: claimed.scaled(C64::from_polar(1.0, check.phase)),
        claimed_phase: check.phase,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipCheck {
    pub ok: bool,
    /// `|<-i| H |+i>|`.
    pub overlap: f64,
    /// `arg <-i| H |+i>`.
    pub phase: f64,
    /// `|<+i| H |+i>|`.
    pub residual_overlap: f64,
}

/// H turns the catalyst `|+i>` into `|-i>` up to the phase `e^{i pi/4}`.
pub fn catalyst_flip_check() -> FlipCheck {
    let h = GateApp::one(GateKind::H, 0);
    let plus_i = Statevector::product(&[QubitState::PlusI]);
    let mut out = plus_i.clone();
    out.apply_gate(&h).expect("single qubit");
    let overlap = Statevector::product(&[QubitState::MinusI]).inner(&out);
    FlipCheck {
        ok: (overlap.norm() - 1.0).abs() <= 1e-13,
        overlap: overlap.norm(),
        phase: overlap.arg(),
        residual_overlap: plus_i.inner(&out).norm(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn real_rows(rows: &[&[f64]]) -> DenseUnitary {
        DenseUnitary::from_real_rows(rows).unwrap()
    }

    #[test]
    fn rz_gadget_at_zero_is_identity() {
        let g = rz_gadget(0.0);
        let u = circuit_unitary(&g.circuit).unwrap();
        assert!(u.max_abs_diff(&DenseUnitary::identity(2)) < 1e-15);
        let c = g.check().unwrap();
        assert!(c.induced.max_abs_diff(&DenseUnitary::identity(1)) < 1e-15);
    }

    #[test]
    fn rz_gadget_at_half_pi_is_s() {
        let c = rz_gadget(PI / 2.0).check().unwrap();
        assert!(c.is_catalytic(1e-12));
        assert!(c.induced.max_abs_diff(&gate_matrix(GateKind::S)) <= 1e-13);
    }

    #[test]
    fn rz_gadget_at_pi_is_z() {
        let g = rz_gadget(PI);
        let c = g.check().unwrap();
        assert!(c.induced.max_abs_diff(&gate_matrix(GateKind::Z)) <= 1e-13);
        // I (x) |0><0| - I (x) |1><1|, worked by hand from the block form.
        let expected = real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
        ]);
        assert!(circuit_unitary(&g.circuit).unwrap().max_abs_diff(&expected) <= 1e-13);
    }

    #[test]
    fn s_gadget_unitary_and_action() {
        let g = s_gadget();
        assert_eq!(g.circuit.gate_counts()[GateTag::H], 2);
        assert_eq!(g.circuit.gate_counts()[GateTag::Cz], 2);
        let expected = real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
        ]);
        let u = circuit_unitary(&g.circuit).unwrap();
        assert!(u.max_abs_diff(&expected) <= 1e-13);
        assert!(u.max_imag() <= 1e-13);

        let s0 = Statevector::product(&[QubitState::PlusI, QubitState::Zero]);
        assert!(run(&g.circuit, &s0).unwrap().max_abs_diff(&s0) <= 1e-13);
        let s1 = Statevector::product(&[QubitState::PlusI, QubitState::One]);
        let out = run(&g.circuit, &s1).unwrap();
        assert!(out.max_abs_diff(&s1.scaled(C64::new(0.0, 1.0))) <= 1e-13);
    }

    #[test]
    fn cs_gadget_unitary_and_action() {
        let g = cs_gadget();
        assert!(g.circuit.check_membership(GateSetProfile::Hccz).is_empty());
        assert_eq!(g.circuit.gate_counts()[GateTag::Ccz], 2);

        // I (x) (I - |11><11|) + iY (x) |11><11|, with iY = [[0, 1], [-1, 0]].
        let mut rows = vec![vec![0.0; 8]; 8];
        for (i, row) in rows.iter_mut().enumerate() {
            if i & 0b11 != 0b11 {
                row[i] = 1.0;
            }
        }
        rows[0b011][0b111] = 1.0;
        rows[0b111][0b011] = -1.0;
        let rows: Vec<&[f64]> = rows.iter().map(Vec::as_slice).collect();
        let u = circuit_unitary(&g.circuit).unwrap();
        assert!(u.max_abs_diff(&real_rows(&rows)) <= 1e-13);

        let s01 = Statevector::product(&[QubitState::PlusI, QubitState::Zero, QubitState::One]);
        assert!(run(&g.circuit, &s01).unwrap().max_abs_diff(&s01) <= 1e-13);
        let s11 = Statevector::product(&[QubitState::PlusI, QubitState::One, QubitState::One]);
        let out = run(&g.circuit, &s11).unwrap();
        assert!(out.max_abs_diff(&s11.scaled(C64::new(0.0, 1.0))) <= 1e-13);
    }

    #[test]
    fn cs_gadget_on_control_one_subspace_is_s() {
        let u = circuit_unitary(&cs_gadget().circuit).unwrap();
        let p = project_environment(
            &u,
            &[
                EnvQubit::catalyst(0, QubitState::PlusI),
                EnvQubit::catalyst(1, QubitState::One),
            ],
        )
        .unwrap();
        assert!(p.residual_norm < 1e-13);
        assert!(p.induced.max_abs_diff(&gate_matrix(GateKind::S)) <= 1e-13);
    }

    fn x_prep(n: usize, target: usize) -> Circuit {
        let mut c = Circuit::new(n).unwrap();
        c.add(GateKind::X, &[target]).unwrap();
        c
    }

    #[test]
    fn x_prep_passes_but_is_not_hccz() {
        let r = verify_one_prep(&x_prep(3, 0), 0).unwrap();
        assert!(r.passes);
        assert!(!r.gate_set_ok);
        assert_eq!(r.phase, 0.0);
        assert_eq!(r.max_error, 0.0);
    }

    #[test]
    fn empty_prep_fails() {
        let r = verify_one_prep(&Circuit::new(3).unwrap(), 0).unwrap();
        assert!(!r.passes);
        assert!(r.gate_set_ok);
        assert!(r.max_error > 1.0);
    }

    #[test]
    fn phased_prep_passes_with_reported_phase() {
        // Y = i X Z; on |0> it gives i|1>, a uniform phase on every basis input.
        let mut c = Circuit::new(2).unwrap();
        c.add(GateKind::Y, &[1]).unwrap();
        let r = verify_one_prep(&c, 1).unwrap();
        assert!(r.passes);
        assert!((r.phase - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn prep_target_out_of_range() {
        assert!(matches!(
            verify_one_prep(&Circuit::new(2).unwrap(), 2),
            Err(GadgetError::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn s_from_x_prep() {
        let g = s_via_prep(&x_prep(3, 0), 0).unwrap();
        assert_eq!(g.catalyst_qubit, 1);
        assert_eq!(g.data_qubits, vec![2]);
        let c = g.check().unwrap();
        assert!(c.is_catalytic(1e-12));
        assert!(c.induced.max_abs_diff(&gate_matrix(GateKind::S)) <= 1e-12);
        assert_eq!(g.circuit.gate_counts()[GateTag::Ccz], 2);
    }

    #[test]
    fn s_from_one_qubit_prep_pads_register() {
        let g = s_via_prep(&x_prep(1, 0), 0).unwrap();
        assert_eq!(g.circuit.num_qubits(), 3);
        let c = g.check().unwrap();
        assert!(c.induced_error <= 1e-12);
    }

    #[test]
    fn s_via_failing_prep_is_an_error() {
        assert!(matches!(
            s_via_prep(&Circuit::new(3).unwrap(), 0),
            Err(GadgetError::PrepFailed { .. })
        ));
    }

    #[test]
    fn ccz_count_adds_two_to_prep() {
        // X followed by six cancelling CCZ pairs: a valid prep with 12 CCZ.
        let mut prep = x_prep(3, 0);
        for _ in 0..6 {
            prep.add(GateKind::Ccz, &[0, 1, 2]).unwrap();
            prep.add(GateKind::Ccz, &[0, 1, 2]).unwrap();
        }
        let check = verify_one_prep(&prep, 0).unwrap();
        assert!(check.passes);
        assert_eq!(check.ccz_count, 12);
        let g = s_via_prep(&prep, 0).unwrap();
        assert_eq!(g.circuit.gate_counts()[GateTag::Ccz], 14);
        assert!(g.check().unwrap().induced_error <= 1e-12);
    }

    #[test]
    fn flip_check() {
        let f = catalyst_flip_check();
        assert!(f.ok);
        assert!((f.phase - FRAC_PI_4).abs() <= 1e-12);
        assert!(f.residual_overlap <= 1e-13);

        let mut hh = Circuit::new(1).unwrap();
        hh.add(GateKind::H, &[0]).unwrap();
        hh.add(GateKind::H, &[0]).unwrap();
        let s = Statevector::product(&[QubitState::PlusI]);
        assert!(run(&hh, &s).unwrap().max_abs_diff(&s) < 1e-15);
    }
}
