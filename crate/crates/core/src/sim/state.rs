use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use super::{gates, SimError};
use crate::ir::{Circuit, GateApp, GateKind};

/// The six single-qubit product states circuits here start from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitState {
    Zero,
    One,
    Plus,
    Minus,
    /// `(|0> + i|1>)/sqrt(2)`, the catalyst.
    PlusI,
    /// `(|0> - i|1>)/sqrt(2)`.
    MinusI,
}

impl QubitState {
    pub fn amplitudes(self) -> [C64; 2] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            QubitState::Zero => [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            QubitState::One => [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            QubitState::Plus => [C64::new(h, 0.0), C64::new(h, 0.0)],
            QubitState::Minus => [C64::new(h, 0.0), C64::new(-h, 0.0)],
            QubitState::PlusI => [C64::new(h, 0.0), C64::new(0.0, h)],
            QubitState::MinusI => [C64::new(h, 0.0), C64::new(0.0, -h)],
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            QubitState::Zero => "0",
            QubitState::One => "1",
            QubitState::Plus => "+",
            QubitState::Minus => "-",
            QubitState::PlusI => "+i",
            QubitState::MinusI => "-i",
        }
    }
}

impl FromStr for QubitState {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "0" => QubitState::Zero,
            "1" => QubitState::One,
            "+" => QubitState::Plus,
            "-" => QubitState::Minus,
            "+i" => QubitState::PlusI,
            "-i" => QubitState::MinusI,
            other => return Err(SimError::BadStateToken(other.to_string())),
        })
    }
}

impl fmt::Display for QubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Parses a comma-separated product-state spec such as `+i,1,1`.
pub fn parse_product_spec(spec: &str) -> Result<Vec<QubitState>, SimError> {
    spec.split(',').map(str::parse).collect()
}

/// Dense state of `n` qubits. Qubit 0 is the most significant bit of the
/// amplitude index, so `|q0 q1 ... q(n-1)>` reads left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<C64>,
}

impl Statevector {
    pub fn zero(n: usize) -> Statevector {
        Statevector::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Statevector {
        assert!(index < 1 << n, "basis index out of range");
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[index] = C64::new(1.0, 0.0);
        Statevector { n, amps }
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Statevector, SimError> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SimError::NotPowerOfTwo(len));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(SimError::NonFinite);
        }
        Ok(Statevector {
            n: len.trailing_zeros() as usize,
            amps,
        })
    }

    /// Tensor product of single-qubit states, qubit 0 first.
    pub fn product(states: &[QubitState]) -> Statevector {
        assert!(!states.is_empty(), "product of zero qubits");
        let mut amps = vec![C64::new(1.0, 0.0)];
        for s in states {
            let [a0, a1] = s.amplitudes();
            amps = amps.iter().flat_map(|&x| [x * a0, x * a1]).collect();
        }
        Statevector {
            n: states.len(),
            amps,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Statevector) -> C64 {
        assert_eq!(self.n, other.n, "inner product dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scaled(&self, factor: C64) -> Statevector {
        Statevector {
            n: self.n,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// Euclidean distance `||self - other||`.
    pub fn distance(&self, other: &Statevector) -> f64 {
        assert_eq!(self.n, other.n, "distance dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise deviation `max |self_i - other_i|`.
    pub fn max_abs_diff(&self, other: &Statevector) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `<t| rho_q |t>` where `rho_q` is the reduced state of `qubit`.
    pub fn reduced_fidelity(&self, qubit: usize, target: QubitState) -> f64 {
        assert!(qubit < self.n, "qubit out of range");
        let [t0, t1] = target.amplitudes();
        let bit = 1usize << (self.n - 1 - qubit);
        (0..self.amps.len())
            .filter(|i| i & bit == 0)
            .map(|i| (t0.conj() * self.amps[i] + t1.conj() * self.amps[i | bit]).norm_sqr())
            .sum()
    }

    pub fn apply_gate(&mut self, gate: &GateApp) -> Result<(), SimError> {
        if let Some(&q) = gate.operands().iter().find(|&&q| q >= self.n) {
            return Err(SimError::QubitOutOfRange {
                qubit: q,
                num_qubits: self.n,
            });
        }
        let kind = gate.kind();
        // Diagonal gates only rephase the all-ones subspace of their operands.
        let diagonal = match kind {
            GateKind::Cz | GateKind::Ccz => Some(C64::new(-1.0, 0.0)),
            GateKind::Cs => Some(C64::new(0.0, 1.0)),
            _ => None,
        };
        if let Some(phase) = diagonal {
            let mask = gate
                .operands()
                .iter()
                .fold(0, |acc, &q| acc | 1usize << (self.n - 1 - q));
            for (i, a) in self.amps.iter_mut().enumerate() {
                if i & mask == mask {
                    *a *= phase;
                }
            }
        } else if let Some(u) = gates::single_qubit_matrix(kind) {
            self.apply_single(
                gate.operands()[0],
                [u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]],
            );
        } else {
            let u = gates::gate_matrix(kind);
            self.apply_dense(gate.operands(), u.matrix());
        }
        Ok(())
    }

    pub(crate) fn apply_single(&mut self, qubit: usize, [u00, u01, u10, u11]: [C64; 4]) {
        let bit = 1usize << (self.n - 1 - qubit);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = u00 * a0 + u01 * a1;
                self.amps[i | bit] = u10 * a0 + u11 * a1;
            }
        }
    }

    fn apply_dense(&mut self, operands: &[usize], u: &nalgebra::DMatrix<C64>) {
        let k = operands.len();
        // Local index bit (k-1-j) corresponds to operand j.
        let masks: Vec<usize> = operands
            .iter()
            .map(|&q| 1usize << (self.n - 1 - q))
            .collect();
        let all = masks.iter().fold(0, |acc, m| acc | m);
        let offsets: Vec<usize> = (0..1usize << k)
            .map(|local| {
                (0..k)
                    .filter(|j| local >> (k - 1 - j) & 1 == 1)
                    .fold(0, |acc, j| acc | masks[j])
            })
            .collect();
        let mut buf = vec![C64::new(0.0, 0.0); 1 << k];
        for base in 0..self.amps.len() {
            if base & all != 0 {
                continue;
            }
            for (b, off) in buf.iter_mut().zip(&offsets) {
                *b = self.amps[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                self.amps[base | off] = (0..buf.len()).map(|c| u[(r, c)] * buf[c]).sum();
            }
        }
    }
}

/// Applies one gate, returning the new state.
pub fn apply_gate(s: &Statevector, g: &GateApp) -> Result<Statevector, SimError> {
    let mut out = s.clone();
    out.apply_gate(g)?;
    Ok(out)
}

/// Runs `c` on `s0`, gates in execution order.
pub fn run(c: &Circuit, s0: &Statevector) -> Result<Statevector, SimError> {
    if s0.num_qubits() != c.num_qubits() {
        return Err(SimError::DimensionMismatch {
            expected: c.num_qubits(),
            found: s0.num_qubits(),
        });
    }
    let mut s = s0.clone();
    for g in c.gates() {
        s.apply_gate(g)?;
    }
    Ok(s)
}
