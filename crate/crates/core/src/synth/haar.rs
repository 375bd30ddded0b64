//! Reproducible Haar-random unitaries.
//!
//! The sampler is pinned so that the same seed gives the same matrix in any
//! implementation:
//!
//! 1. `ChaCha20Rng::seed_from_u64(seed)`.
//! 2. Uniform doubles `u = (next_u64() >> 11) * 2^-53`, in `[0, 1)`.
//! 3. Standard normals by Box-Muller on consecutive pairs `(u1, u2)`:
//!    `r = sqrt(-2 ln(1 - u1))`, giving `r cos(2 pi u2)` then `r sin(2 pi u2)`.
//! 4. Ginibre matrix `G[i][j] = (x + i y) / sqrt(2)`, filled row-major, real
//!    part drawn before imaginary part.
//! 5. `G = QR` (Householder), `U = Q diag(R_ii / |R_ii|)`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::sim::DenseUnitary;

struct Normals {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl Normals {
    fn new(seed: u64) -> Normals {
        Normals {
            rng: ChaCha20Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let (u1, u2) = (self.uniform(), self.uniform());
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }
}

/// Haar-distributed unitary on `m` qubits, deterministic in `seed`.
pub fn haar_unitary(m: usize, seed: u64) -> DenseUnitary {
    let dim = 1usize << m;
    let mut normals = Normals::new(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut entries = Vec::with_capacity(dim * dim);
    for _ in 0..dim * dim {
        let re = normals.next();
        let im = normals.next();
        entries.push(C64::new(re * scale, im * scale));
    }
    let g = DMatrix::from_row_slice(dim, dim, &entries);
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let fix = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= fix;
        }
    }
    DenseUnitary::new(q).expect("QR factor is unitary")
}
