//! Matrix identities the rewrite rules depend on, checked numerically.
//!
//! Each entry compares a rule's left- and right-hand sides entrywise, with no
//! phase quotient. The rewriter's correctness reduces to these plus the
//! gadget checks in [`gadgets`](crate::gadgets).

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::gadgets::{cs_gadget, s_gadget, Gadget};
use crate::ir::{Circuit, GateKind};
use crate::sim::{
    circuit_unitary, gate_matrix, project_environment, DenseUnitary, EnvQubit, QubitState,
};

/// Entrywise tolerance for every lemma.
pub const LEMMA_TOLERANCE: f64 = 1e-13;

/// Angles at which the parameterized lemmas are checked.
pub const LEMMA_ANGLES: [f64; 8] = [
    0.0,
    0.3,
    -1.1,
    std::f64::consts::FRAC_PI_2,
    2.5,
    std::f64::consts::PI,
    -4.0,
    6.0,
];

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaResult {
    pub name: &'static str,
    pub error: f64,
}

impl LemmaResult {
    pub fn holds(&self) -> bool {
        self.error <= LEMMA_TOLERANCE
    }
}

fn circuit(n: usize, gates: &[(GateKind, &[usize])]) -> DenseUnitary {
    let mut c = Circuit::new(n).expect("n >= 1");
    for (k, ops) in gates {
        c.add(*k, ops).expect("lemma circuits are valid");
    }
    circuit_unitary(&c).expect("small register")
}

fn diff(a: &DenseUnitary, b: &DenseUnitary) -> f64 {
    a.max_abs_diff(b)
}

fn worst(f: impl Fn(f64) -> f64) -> f64 {
    LEMMA_ANGLES.iter().map(|&t| f(t)).fold(0.0, f64::max)
}

/// `|1><1|` on the first qubit tensored with `u`: the block of an operator
/// whose first qubit is held at `|1>`.
fn ones_block(u: &DenseUnitary) -> DenseUnitary {
    let env = [EnvQubit::catalyst(0, QubitState::One)];
    project_environment(u, &env)
        .expect("two or more qubits")
        .induced
}

/// Evaluates every lemma.
pub fn check_lemmas() -> Vec<LemmaResult> {
    use GateKind::*;
    let s_cubed = circuit(1, &[(S, &[0]), (S, &[0]), (S, &[0])]);
    let cz_from_ccz = ones_block(&gate_matrix(Ccz));
    let induced = |g: Gadget| {
        let env = g.environment();
        project_environment(&circuit_unitary(&g.circuit).expect("small"), &env)
            .expect("valid environment")
            .induced
    };
    let mut cs_expected = DMatrix::<C64>::identity(4, 4);
    cs_expected[(3, 3)] = C64::new(0.0, 1.0);
    vec![
        LemmaResult {
            name: "SDG = S S S",
            error: diff(&s_cubed, &gate_matrix(Sdg)),
        },
        LemmaResult {
            name: "RX(t) = SDG RY(t) S",
            error: worst(|t| {
                diff(
                    &circuit(1, &[(S, &[0]), (Ry(t), &[0]), (Sdg, &[0])]),
                    &gate_matrix(Rx(t)),
                )
            }),
        },
        LemmaResult {
            name: "RZ(t) = H RX(t) H",
            error: worst(|t| {
                diff(
                    &circuit(1, &[(H, &[0]), (Rx(t), &[0]), (H, &[0])]),
                    &gate_matrix(Rz(t)),
                )
            }),
        },
        LemmaResult {
            name: "CZ = CCZ with first control at |1>",
            error: diff(&cz_from_ccz, &gate_matrix(Cz)),
        },
        LemmaResult {
            name: "S = H CZ H CZ on |+i>",
            error: diff(&induced(s_gadget()), &gate_matrix(S)),
        },
        LemmaResult {
            name: "CS = H CCZ H CCZ on |+i>",
            error: diff(
                &induced(cs_gadget()),
                &DenseUnitary::new(cs_expected).expect("diagonal unitary"),
            ),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_lemma_holds() {
        let results = check_lemmas();
        assert_eq!(results.len(), 6);
        for r in results {
            assert!(r.holds(), "{} off by {:e}", r.name, r.error);
        }
    }

    #[test]
    fn a_false_identity_is_caught() {
        let err = diff(&gate_matrix(GateKind::S), &gate_matrix(GateKind::Sdg));
        assert!(err > 1.0);
    }
}
