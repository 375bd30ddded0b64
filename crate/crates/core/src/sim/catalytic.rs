//! Factoring an operator into (fixed environment states) x (induced data operator).
//!
//! For a single catalyst qubit `c` in state `|k>`, the induced operator is
//! `V = (<k| (x) I) U (|k> (x) I)` and the leakage is
//! `R = (<k_perp| (x) I) U (|k> (x) I)`. `U` acts catalytically exactly when
//! `R = 0`, in which case `U (|k> (x) |psi>) = |k> (x) V|psi>` for every
//! `|psi>` and `V` is unitary.
//!
//! The same projection is generalised to several environment qubits whose
//! input and output states may differ (an ancilla that enters as `|0>` and
//! leaves as `|1>`).

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::{run, DenseUnitary, QubitState, SimError, Statevector};
use crate::ir::Circuit;

/// A non-data qubit with a declared input and expected output state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvQubit {
    pub qubit: usize,
    pub input: QubitState,
    pub output: QubitState,
}

impl EnvQubit {
    pub fn catalyst(qubit: usize, state: QubitState) -> EnvQubit {
        EnvQubit {
            qubit,
            input: state,
            output: state,
        }
    }
}

/// Result of projecting an operator onto its environment states.
#[derive(Debug, Clone)]
pub struct Projection {
    /// Induced operator on the data qubits (ascending index order). Unitary
    /// only when the environment factors out cleanly.
    pub induced: DenseUnitary,
    pub data_qubits: Vec<usize>,
    /// Frobenius norm of everything the environment projector discards.
    pub residual_norm: f64,
    /// `max_j (1 - |<env_out, V e_j | U | env_in, e_j>|)` over data basis states.
    pub overlap_deficit: f64,
}

#[derive(Debug, Clone)]
pub struct CatalyticReport {
    pub is_catalytic: bool,
    /// Present iff `is_catalytic`.
    pub induced: Option<DenseUnitary>,
    pub residual_norm: f64,
    pub catalyst_overlap_deficit: f64,
    /// `||V^dag V - I||_F` of the projected operator.
    pub unitarity_error: f64,
}

/// Checks whether `u` returns `catalyst_state` on `catalyst_qubit` untouched and
/// reports the induced operator on the remaining qubits.
pub fn extract_catalytic(
    u: &DenseUnitary,
    catalyst_qubit: usize,
    catalyst_state: QubitState,
    tol: f64,
) -> Result<CatalyticReport, SimError> {
    if u.num_qubits() < 2 {
        return Err(SimError::TooFewQubits);
    }
    let p = project_environment(u, &[EnvQubit::catalyst(catalyst_qubit, catalyst_state)])?;
    let unitarity_error = p.induced.unitarity_error();
    let is_catalytic = p.residual_norm <= tol && unitarity_error <= tol;
    Ok(CatalyticReport {
        is_catalytic,
        induced: is_catalytic.then_some(p.induced),
        residual_norm: p.residual_norm,
        catalyst_overlap_deficit: p.overlap_deficit,
        unitarity_error,
    })
}

/// Projects a dense operator onto the environment states in `env`.
pub fn project_environment(u: &DenseUnitary, env: &[EnvQubit]) -> Result<Projection, SimError> {
    let layout = Layout::new(u.num_qubits(), env)?;
    let m = u.matrix();
    layout.project(|input| {
        let amps = input.amplitudes();
        let nz: Vec<(usize, C64)> = amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, &a)| (i, a))
            .collect();
        let out = (0..m.nrows())
            .map(|r| nz.iter().map(|&(c, a)| m[(r, c)] * a).sum())
            .collect();
        Ok(out)
    })
}

/// Same as [`project_environment`] on `circuit_unitary(c)`, but simulates only
/// the `2^(n - |env|)` input columns that are actually needed.
pub fn project_environment_of_circuit(
    c: &Circuit,
    env: &[EnvQubit],
) -> Result<Projection, SimError> {
    let layout = Layout::new(c.num_qubits(), env)?;
    layout.project(|input| Ok(run(c, input)?.into_amplitudes()))
}

struct Layout<'a> {
    n: usize,
    env: &'a [EnvQubit],
    data: Vec<usize>,
}

impl<'a> Layout<'a> {
    fn new(n: usize, env: &'a [EnvQubit]) -> Result<Layout<'a>, SimError> {
        for (i, e) in env.iter().enumerate() {
            if e.qubit >= n {
                return Err(SimError::QubitOutOfRange {
                    qubit: e.qubit,
                    num_qubits: n,
                });
            }
            if env[..i].iter().any(|f| f.qubit == e.qubit) {
                return Err(SimError::DuplicateEnvQubit(e.qubit));
            }
        }
        if env.len() >= n {
            return Err(SimError::TooFewQubits);
        }
        let data = (0..n)
            .filter(|q| env.iter().all(|e| e.qubit != *q))
            .collect();
        Ok(Layout { n, env, data })
    }

    fn full_index(&self, env_bits: usize, data_index: usize) -> usize {
        let k = self.env.len();
        let d = self.data.len();
        let mut idx = 0;
        for (j, e) in self.env.iter().enumerate() {
            if env_bits >> (k - 1 - j) & 1 == 1 {
                idx |= 1 << (self.n - 1 - e.qubit);
            }
        }
        for (j, &q) in self.data.iter().enumerate() {
            if data_index >> (d - 1 - j) & 1 == 1 {
                idx |= 1 << (self.n - 1 - q);
            }
        }
        idx
    }

    fn env_amplitude(&self, env_bits: usize, output: bool) -> C64 {
        let k = self.env.len();
        self.env
            .iter()
            .enumerate()
            .map(|(j, e)| {
                let state = if output { e.output } else { e.input };
                state.amplitudes()[env_bits >> (k - 1 - j) & 1]
            })
            .product()
    }

    fn project(
        &self,
        mut apply: impl FnMut(&Statevector) -> Result<Vec<C64>, SimError>,
    ) -> Result<Projection, SimError> {
        let env_dim = 1usize << self.env.len();
        let data_dim = 1usize << self.data.len();
        let mut induced = DMatrix::<C64>::zeros(data_dim, data_dim);
        let mut residual_sq = 0.0;
        let mut deficit: f64 = 0.0;

        for j in 0..data_dim {
            let mut input = vec![C64::new(0.0, 0.0); 1 << self.n];
            for e in 0..env_dim {
                input[self.full_index(e, j)] = self.env_amplitude(e, false);
            }
            let out = apply(&Statevector::from_amplitudes(input)?)?;

            for i in 0..data_dim {
                induced[(i, j)] = (0..env_dim)
                    .map(|e| self.env_amplitude(e, true).conj() * out[self.full_index(e, i)])
                    .sum();
            }
            // (env bits, data bits) enumerates every basis index exactly once.
            for e in 0..env_dim {
                let amp = self.env_amplitude(e, true);
                for i in 0..data_dim {
                    let idx = self.full_index(e, i);
                    residual_sq += (out[idx] - amp * induced[(i, j)]).norm_sqr();
                }
            }

            let col_norm_sq: f64 = (0..data_dim).map(|i| induced[(i, j)].norm_sqr()).sum();
            deficit = deficit.max(1.0 - col_norm_sq);
        }

        Ok(Projection {
            induced: DenseUnitary::from_matrix_unchecked(induced),
            data_qubits: self.data.clone(),
            residual_norm: residual_sq.sqrt(),
            overlap_deficit: deficit.max(0.0),
        })
    }
}
