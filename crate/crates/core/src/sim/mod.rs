//! Dense statevector and unitary simulation.
//!
//! Qubit 0 is always the most significant bit of a basis index.

mod catalytic;
pub mod gates;
mod state;

pub use catalytic::{
    extract_catalytic, project_environment, project_environment_of_circuit, CatalyticReport,
    EnvQubit, Projection,
};
pub use gates::gate_matrix;
pub use state::{apply_gate, parse_product_spec, run, QubitState, Statevector};

use std::fmt;

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::ir::Circuit;

/// Largest register `circuit_unitary` will build.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("qubit {qubit} out of range for {num_qubits} qubit(s)")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("expected {expected} qubit(s), found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} qubits exceeds the dense simulation limit of {MAX_DENSE_QUBITS}")]
    TooManyQubits(usize),
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not unitary: ||U^dag U - I||_F = {0:e}")]
    NotUnitary(f64),
    #[error("non-finite amplitude")]
    NonFinite,
    #[error("catalytic extraction needs at least 2 qubits")]
    TooFewQubits,
    #[error("qubit {0} listed twice in the environment")]
    DuplicateEnvQubit(usize),
    #[error("unknown qubit state `{0}` (expected one of 0, 1, +, -, +i, -i)")]
    BadStateToken(String),
}

/// A `2^n x 2^n` complex matrix on `n` qubits.
///
/// Constructed values from gates and circuits are unitary; `from_matrix_unchecked`
/// also admits projected operators (see [`Projection`]) that may not be.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    n: usize,
    mat: DMatrix<C64>,
}

impl DenseUnitary {
    /// Wraps `mat`, requiring `||U^dag U - I||_F <= 1e-10`.
    pub fn new(mat: DMatrix<C64>) -> Result<DenseUnitary, SimError> {
        let u = DenseUnitary::try_from_matrix(mat)?;
        let err = u.unitarity_error();
        if err > 1e-10 {
            return Err(SimError::NotUnitary(err));
        }
        Ok(u)
    }

    pub fn try_from_matrix(mat: DMatrix<C64>) -> Result<DenseUnitary, SimError> {
        if mat.nrows() != mat.ncols() {
            return Err(SimError::NotSquare(mat.nrows(), mat.ncols()));
        }
        let d = mat.nrows();
        if d < 2 || !d.is_power_of_two() {
            return Err(SimError::NotPowerOfTwo(d));
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SimError::NonFinite);
        }
        Ok(DenseUnitary {
            n: d.trailing_zeros() as usize,
            mat,
        })
    }

    pub(crate) fn from_matrix_unchecked(mat: DMatrix<C64>) -> DenseUnitary {
        debug_assert!(mat.nrows() == mat.ncols() && mat.nrows().is_power_of_two());
        DenseUnitary {
            n: mat.nrows().trailing_zeros() as usize,
            mat,
        }
    }

    pub fn from_matrix2(m: &Matrix2<C64>) -> DenseUnitary {
        DenseUnitary::from_matrix_unchecked(DMatrix::from_fn(2, 2, |r, c| m[(r, c)]))
    }

    pub fn identity(n: usize) -> DenseUnitary {
        DenseUnitary {
            n,
            mat: DMatrix::identity(1 << n, 1 << n),
        }
    }

    /// Builds from row-major real entries; handy for literal matrices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<DenseUnitary, SimError> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(SimError::NotSquare(d, rows.first().map_or(0, |r| r.len())));
        }
        DenseUnitary::try_from_matrix(DMatrix::from_fn(d, d, |r, c| C64::new(rows[r][c], 0.0)))
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn to_matrix2(&self) -> Option<Matrix2<C64>> {
        (self.n == 1).then(|| Matrix2::from_fn(|r, c| self.mat[(r, c)]))
    }

    pub fn adjoint(&self) -> DenseUnitary {
        DenseUnitary {
            n: self.n,
            mat: self.mat.adjoint(),
        }
    }

    /// Matrix product `self * rhs` (so `rhs` acts first).
    pub fn compose(&self, rhs: &DenseUnitary) -> DenseUnitary {
        assert_eq!(self.n, rhs.n, "compose dimension mismatch");
        DenseUnitary {
            n: self.n,
            mat: &self.mat * &rhs.mat,
        }
    }

    /// `self (x) rhs`; `self` occupies the most significant qubits.
    pub fn kron(&self, rhs: &DenseUnitary) -> DenseUnitary {
        DenseUnitary {
            n: self.n + rhs.n,
            mat: self.mat.kronecker(&rhs.mat),
        }
    }

    pub fn scaled(&self, factor: C64) -> DenseUnitary {
        DenseUnitary {
            n: self.n,
            mat: &self.mat * factor,
        }
    }

    /// `||U^dag U - I||_F`.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim();
        (self.mat.adjoint() * &self.mat - DMatrix::<C64>::identity(d, d)).norm()
    }

    /// `max_ij |A_ij - B_ij|`; no phase quotient.
    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|Im U_ij|`.
    pub fn max_imag(&self) -> f64 {
        self.mat.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }
}

impl fmt::Display for DenseUnitary {
    /// Row-major `re+imi` entries, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|c| {
                    let z = self.mat[(r, c)];
                    format!("{:.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Full unitary of `c`; column `j` is `run(c, |j>)`.
pub fn circuit_unitary(c: &Circuit) -> Result<DenseUnitary, SimError> {
    let n = c.num_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(SimError::TooManyQubits(n));
    }
    let d = 1usize << n;
    let mut mat = DMatrix::zeros(d, d);
    for j in 0..d {
        let out = run(c, &Statevector::basis(n, j))?;
        mat.set_column(j, &nalgebra::DVector::from_column_slice(out.amplitudes()));
    }
    Ok(DenseUnitary { n, mat })
}

/// Distance between two operators with the global phase quotiented out:
/// `sqrt(1 - |Tr(A^dag B)| / 2^n)` for unitaries.
///
/// Evaluated as `||A - e^{i phi} B||_F / sqrt(2 * 2^n)` with
/// `phi = -arg Tr(A^dag B)`, which agrees with the trace form on unitaries
/// and does not lose half the significant digits to cancellation near zero.
pub fn phase_aligned_distance(a: &DenseUnitary, b: &DenseUnitary) -> Result<f64, SimError> {
    if a.dim() != b.dim() {
        return Err(SimError::DimensionMismatch {
            expected: a.num_qubits(),
            found: b.num_qubits(),
        });
    }
    // Both orders are summed so the result is bitwise symmetric.
    let sq = aligned_diff_sq(a, b) + aligned_diff_sq(b, a);
    Ok((sq / (4.0 * a.dim() as f64)).sqrt())
}

fn aligned_diff_sq(a: &DenseUnitary, b: &DenseUnitary) -> f64 {
    let overlap: C64 = a
        .mat
        .iter()
        .zip(b.mat.iter())
        .map(|(x, y)| x.conj() * y)
        .sum();
    let align = if overlap.norm() > 0.0 {
        (overlap / overlap.norm()).conj()
    } else {
        C64::new(1.0, 0.0)
    };
    a.mat
        .iter()
        .zip(b.mat.iter())
        .map(|(x, y)| (x - align * y).norm_sqr())
        .sum()
}

/// Global phase `phi` minimizing `||A - e^{i phi} B||`, i.e. `arg Tr(B^dag A)`.
pub fn relative_phase(a: &DenseUnitary, b: &DenseUnitary) -> f64 {
    let overlap: C64 = b
        .mat
        .iter()
        .zip(a.mat.iter())
        .map(|(x, y)| x.conj() * y)
        .sum();
    overlap.arg()
}
