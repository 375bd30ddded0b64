//! Standard gate matrices.
//!
//! Multi-qubit matrices are indexed with the first operand as the most
//! significant bit, so `CS = diag(1, 1, 1, i)` and
//! `CRY(phi) = |0><0| (x) I + |1><1| (x) RY(phi)` with the control first.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64 as C64;

use super::DenseUnitary;
use crate::ir::GateKind;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn identity2() -> Matrix2<C64> {
    Matrix2::identity()
}

pub fn hadamard() -> Matrix2<C64> {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Matrix2::new(h, h, h, -h)
}

pub fn pauli_x() -> Matrix2<C64> {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> Matrix2<C64> {
    Matrix2::new(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> Matrix2<C64> {
    Matrix2::new(ONE, ZERO, ZERO, -ONE)
}

pub fn phase_s() -> Matrix2<C64> {
    Matrix2::new(ONE, ZERO, ZERO, I)
}

pub fn phase_sdg() -> Matrix2<C64> {
    Matrix2::new(ONE, ZERO, ZERO, -I)
}

/// `diag(1, e^{i lambda})`.
pub fn phase(lambda: f64) -> Matrix2<C64> {
    Matrix2::new(ONE, ZERO, ZERO, C64::from_polar(1.0, lambda))
}

pub fn rx(theta: f64) -> Matrix2<C64> {
    let (s, c) = (theta / 2.0).sin_cos();
    Matrix2::new(
        C64::new(c, 0.0),
        C64::new(0.0, -s),
        C64::new(0.0, -s),
        C64::new(c, 0.0),
    )
}

pub fn ry(theta: f64) -> Matrix2<C64> {
    let (s, c) = (theta / 2.0).sin_cos();
    Matrix2::new(
        C64::new(c, 0.0),
        C64::new(-s, 0.0),
        C64::new(s, 0.0),
        C64::new(c, 0.0),
    )
}

pub fn rz(theta: f64) -> Matrix2<C64> {
    Matrix2::new(
        C64::from_polar(1.0, -theta / 2.0),
        ZERO,
        ZERO,
        C64::from_polar(1.0, theta / 2.0),
    )
}

/// Single-qubit matrix of a one-qubit gate kind.
pub fn single_qubit_matrix(kind: GateKind) -> Option<Matrix2<C64>> {
    Some(match kind {
        GateKind::H => hadamard(),
        GateKind::X => pauli_x(),
        GateKind::Y => pauli_y(),
        GateKind::Z => pauli_z(),
        GateKind::S => phase_s(),
        GateKind::Sdg => phase_sdg(),
        GateKind::Rx(t) => rx(t),
        GateKind::Ry(t) => ry(t),
        GateKind::Rz(t) => rz(t),
        _ => return None,
    })
}

/// `|0><0| (x) I + |1><1| (x) u` on (control, target).
pub fn controlled(u: &Matrix2<C64>) -> DMatrix<C64> {
    let mut m = DMatrix::identity(4, 4);
    m.view_mut((2, 2), (2, 2)).copy_from(u);
    m
}

pub fn gate_matrix(kind: GateKind) -> DenseUnitary {
    let mat = match kind {
        GateKind::Cz => controlled(&pauli_z()),
        GateKind::Cs => controlled(&phase_s()),
        GateKind::Cry(phi) => controlled(&ry(phi)),
        GateKind::Ccz => {
            let mut m = DMatrix::identity(8, 8);
            m[(7, 7)] = -ONE;
            m
        }
        one => {
            let u = single_qubit_matrix(one).expect("single-qubit kind");
            DMatrix::from_fn(2, 2, |r, c| u[(r, c)])
        }
    };
    DenseUnitary::from_matrix_unchecked(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: &Matrix2<C64>, b: &Matrix2<C64>, tol: f64) -> bool {
        (a - b).iter().all(|z| z.norm() <= tol)
    }

    #[test]
    fn hadamard_entries() {
        let h = gate_matrix(GateKind::H);
        let m = h.matrix();
        assert_eq!(m[(0, 0)], C64::new(FRAC_1_SQRT_2, 0.0));
        assert_eq!(m[(0, 1)], C64::new(FRAC_1_SQRT_2, 0.0));
        assert_eq!(m[(1, 0)], C64::new(FRAC_1_SQRT_2, 0.0));
        assert_eq!(m[(1, 1)], C64::new(-FRAC_1_SQRT_2, 0.0));
    }

    #[test]
    fn ry_pi() {
        let expected = Matrix2::new(ZERO, -ONE, ONE, ZERO);
        assert!(close(&ry(PI), &expected, 1e-15));
    }

    #[test]
    fn rz_half_pi_is_phased_s() {
        let r = rz(PI / 2.0);
        assert!((r[(0, 0)] - C64::from_polar(1.0, -PI / 4.0)).norm() < 1e-15);
        assert!((r[(1, 1)] - C64::from_polar(1.0, PI / 4.0)).norm() < 1e-15);
        let phased_s = phase_s() * C64::from_polar(1.0, -PI / 4.0);
        assert!(close(&r, &phased_s, 1e-15));
    }

    #[test]
    fn two_and_three_qubit_diagonals() {
        let cs = gate_matrix(GateKind::Cs);
        let ccz = gate_matrix(GateKind::Ccz);
        for i in 0..4 {
            let expected = if i == 3 { I } else { ONE };
            assert_eq!(cs.matrix()[(i, i)], expected);
        }
        for i in 0..8 {
            let expected = if i == 7 { -ONE } else { ONE };
            assert_eq!(ccz.matrix()[(i, i)], expected);
        }
        assert_eq!(ccz.matrix().iter().filter(|z| z.norm() > 0.0).count(), 8);
    }

    #[test]
    fn cry_blocks() {
        let m = gate_matrix(GateKind::Cry(0.8));
        let r = ry(0.8);
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(m.matrix()[(2 + a, 2 + b)], r[(a, b)]);
        }
        assert_eq!(m.matrix()[(0, 0)], ONE);
        assert_eq!(m.matrix()[(1, 1)], ONE);
    }

    #[test]
    fn every_gate_is_unitary() {
        let kinds = [
            GateKind::H,
            GateKind::X,
            GateKind::Y,
            GateKind::Z,
            GateKind::S,
            GateKind::Sdg,
            GateKind::Rx(0.3),
            GateKind::Ry(-1.1),
            GateKind::Rz(2.9),
            GateKind::Cz,
            GateKind::Cs,
            GateKind::Cry(0.4),
            GateKind::Ccz,
        ];
        for k in kinds {
            let u = gate_matrix(k);
            assert_eq!(u.num_qubits(), k.arity());
            assert!(u.unitarity_error() < 1e-14, "{k:?}");
        }
    }
}
