//! Euler factorizations of 2x2 unitaries.

use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

use super::SynthError;
use crate::sim::gates;

/// `u = e^{i phase} RX(alpha) RY(beta) RX(gamma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerXYX {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub phase: f64,
}

impl EulerXYX {
    pub fn matrix(&self) -> Matrix2<C64> {
        gates::rx(self.alpha)
            * gates::ry(self.beta)
            * gates::rx(self.gamma)
            * C64::from_polar(1.0, self.phase)
    }
}

/// `u = e^{i phase} RZ(a) RY(b) RZ(c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct EulerZYZ {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub phase: f64,
}

impl EulerZYZ {
    #[cfg(test)]
    pub fn matrix(&self) -> Matrix2<C64> {
        gates::rz(self.a) * gates::ry(self.b) * gates::rz(self.c) * C64::from_polar(1.0, self.phase)
    }
}

pub(crate) fn unitarity_error2(u: &Matrix2<C64>) -> f64 {
    (u.adjoint() * u - Matrix2::identity()).norm()
}

/// Below this magnitude an off-diagonal entry is treated as zero when
/// choosing the sign of the middle rotation.
const SIGN_EPS: f64 = 1e-14;

pub(crate) fn zyz(u: &Matrix2<C64>) -> EulerZYZ {
    let phase = u.determinant().arg() / 2.0;
    let v = u * C64::from_polar(1.0, -phase);
    // v = [[e^{-i(a+c)/2} cos(b/2), -e^{-i(a-c)/2} sin(b/2)],
    //      [e^{ i(a-c)/2} sin(b/2),  e^{ i(a+c)/2} cos(b/2)]]
    let (v10, v11) = (v[(1, 0)], v[(1, 1)]);
    let mut b = 2.0 * v10.norm().atan2(v11.norm());
    let mut diff = 2.0 * v10.arg();
    // Prefer a negative middle angle over a half-turn in the outer ones, so
    // that RY(t) comes back as (0, t, 0).
    if v10.norm() > SIGN_EPS && v10.arg().abs() > std::f64::consts::FRAC_PI_2 {
        b = -b;
        diff = 2.0 * (-v10).arg();
    }
    let sum = 2.0 * v11.arg();
    EulerZYZ {
        a: (sum + diff) / 2.0,
        b,
        c: (sum - diff) / 2.0,
        phase,
    }
}

/// Factors a 2x2 unitary into X-Y-X rotations.
///
/// Conjugating by H swaps the X and Z axes and negates Y, so the ZYZ angles
/// `(a, b, c)` of `H u H` give `u = e^{i phase} RX(a) RY(-b) RX(c)`.
pub fn euler_xyx(u: &Matrix2<C64>) -> Result<EulerXYX, SynthError> {
    let err = unitarity_error2(u);
    if err.is_nan() || err > 1e-10 {
        return Err(SynthError::NotUnitary(err));
    }
    let h = gates::hadamard();
    let z = zyz(&(h * u * h));
    Ok(EulerXYX {
        alpha: z.a,
        beta: -z.b,
        gamma: z.c,
        phase: z.phase,
    })
}

/// Square root of an SU(2) element that is itself in SU(2).
///
/// Writing `w = cos(t) I + i sin(t) n.sigma` with `t` in `[0, pi]`, returns
/// `cos(t/2) I + i sin(t/2) n.sigma`. When `w = -I` the axis is arbitrary and
/// `n = z` is used.
pub(crate) fn su2_sqrt(w: &Matrix2<C64>) -> Matrix2<C64> {
    let cos_t = ((w[(0, 0)] + w[(1, 1)]) / 2.0).re;
    // Hermitian part k.sigma = (w - w^dag) / 2i = sin(t) n.sigma.
    let k = (w - w.adjoint()) / C64::new(0.0, 2.0);
    let kz = k[(0, 0)].re;
    let (kx, ky) = (k[(1, 0)].re, k[(1, 0)].im);
    let sin_t = (kx * kx + ky * ky + kz * kz).sqrt();
    let t = sin_t.atan2(cos_t);
    let (nx, ny, nz) = if sin_t > 0.0 {
        (kx / sin_t, ky / sin_t, kz / sin_t)
    } else {
        (0.0, 0.0, 1.0)
    };
    let (s, c) = (t / 2.0).sin_cos();
    let i = C64::new(0.0, 1.0);
    // n.sigma = [[nz, nx - i ny], [nx + i ny, -nz]]
    Matrix2::new(
        C64::new(c, 0.0) + i * s * nz,
        i * s * C64::new(nx, -ny),
        i * s * C64::new(nx, ny),
        C64::new(c, 0.0) - i * s * nz,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn diff(a: &Matrix2<C64>, b: &Matrix2<C64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_gives_zero_angles() {
        let e = euler_xyx(&gates::identity2()).unwrap();
        assert_eq!((e.alpha, e.beta, e.gamma, e.phase), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn ry_stays_in_the_y_slot() {
        let e = euler_xyx(&gates::ry(1.3)).unwrap();
        assert!(e.alpha.abs() < 1e-15 && e.gamma.abs() < 1e-15 && e.phase.abs() < 1e-15);
        assert!((e.beta - 1.3).abs() < 1e-14);
    }

    #[test]
    fn hadamard_reconstructs() {
        let h = gates::hadamard();
        let e = euler_xyx(&h).unwrap();
        assert!(diff(&e.matrix(), &h) <= 1e-12);
    }

    #[test]
    fn named_gates_reconstruct() {
        for u in [
            gates::pauli_x(),
            gates::pauli_y(),
            gates::pauli_z(),
            gates::phase_s(),
            gates::phase_sdg(),
            gates::rz(0.4),
            gates::rx(-2.0),
            -gates::identity2(),
        ] {
            let e = euler_xyx(&u).unwrap();
            assert!(diff(&e.matrix(), &u) <= 1e-12, "{u:?} -> {e:?}");
            for angle in [e.alpha, e.beta, e.gamma] {
                assert!(angle > -2.0 * PI && angle <= 2.0 * PI);
            }
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let m = gates::hadamard() * C64::new(1.1, 0.0);
        assert!(matches!(euler_xyx(&m), Err(SynthError::NotUnitary(_))));
    }

    #[test]
    fn zyz_reconstructs() {
        for u in [
            gates::hadamard(),
            gates::rx(0.3) * gates::phase_s(),
            gates::ry(-3.0),
        ] {
            assert!(diff(&zyz(&u).matrix(), &u) < 1e-14);
        }
    }

    #[test]
    fn sqrt_squares_back() {
        for w in [
            gates::identity2(),
            -gates::identity2(),
            gates::rx(0.9),
            gates::ry(-2.2) * gates::rz(1.4),
            gates::rz(2.0 * PI - 1e-9),
            gates::rx(3.0) * gates::rz(-1.0),
        ] {
            let v = su2_sqrt(&w);
            assert!(diff(&(v * v), &w) < 1e-14, "{w:?}");
            assert!((v.determinant() - C64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }
}
