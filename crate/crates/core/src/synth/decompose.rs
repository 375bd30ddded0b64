//! Exact decomposition of `m`-qubit unitaries into single-qubit gates and CZ.
//!
//! Basis states are visited in Gray-code order so that every Givens rotation
//! acts on two indices that differ in exactly one bit. Each rotation is then
//! a single-qubit SU(2) gate on that bit, controlled on all other qubits
//! matching the pair's common bits:
//!
//! * no control: the gate itself;
//! * one control: `A CX B CX C` (2 CZ);
//! * two controls: the `V = sqrt(W)` construction
//!   `CV(c2) CX(c1,c2) CV^dag(c2) CX(c1,c2) CV(c1)` with the inner
//!   single-qubit factors cancelled, 7 CZ.
//!
//! An `N x N` unitary needs at most `N(N-1)/2` rotations, so the worst case is
//! 1 rotation for `m = 1`, 6 x 2 = 12 CZ for `m = 2` and 28 x 7 = 196 CZ for
//! `m = 3`. Consecutive single-qubit factors on the same wire are fused and
//! emitted through the cheapest matching gate (`S`, `SDG`, `H`, `X`, `Z`,
//! `RY`) before falling back to `RX RY RX`.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64 as C64;

use super::euler::{euler_xyx, su2_sqrt, zyz};
use super::SynthError;
use crate::ir::{Circuit, GateApp, GateKind};
use crate::sim::{gates, DenseUnitary};

/// Largest register `decompose_su2m` handles.
pub const MAX_SYNTH_QUBITS: usize = 3;

/// Entries below this are treated as already eliminated.
const ZERO_EPS: f64 = 1e-14;
/// Tolerance for recognising named single-qubit gates.
const MATCH_EPS: f64 = 1e-12;

/// A 2x2 special unitary acting on basis indices `(low, high)` that differ in one bit.
#[derive(Debug, Clone)]
pub(crate) struct TwoLevel {
    pub low: usize,
    pub high: usize,
    pub gate: Matrix2<C64>,
}

fn gray(k: usize) -> usize {
    k ^ (k >> 1)
}

/// Factors `u` (up to global phase) into two-level SU(2) rotations, returned
/// in execution order.
pub(crate) fn two_level_factors(u: &DMatrix<C64>) -> Vec<TwoLevel> {
    let dim = u.nrows();
    let det = u.determinant();
    let mut w = u * C64::from_polar(1.0, -det.arg() / dim as f64);

    let mut applied = Vec::new();
    for c in 0..dim - 1 {
        let col = gray(c);
        for k in (c + 1..dim).rev() {
            let (p, q) = (gray(k - 1), gray(k));
            let (a, b) = (w[(p, col)], w[(q, col)]);
            let diagonal = k - 1 == c;
            if b.norm() < ZERO_EPS && (!diagonal || (a - C64::new(1.0, 0.0)).norm() < ZERO_EPS) {
                continue;
            }
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            // Sends (a, b) to (r, 0) with determinant 1.
            let g = Matrix2::new(a.conj() / r, b.conj() / r, -b / r, a / r);
            for j in 0..dim {
                let (x, y) = (w[(p, j)], w[(q, j)]);
                w[(p, j)] = g[(0, 0)] * x + g[(0, 1)] * y;
                w[(q, j)] = g[(1, 0)] * x + g[(1, 1)] * y;
            }
            applied.push(TwoLevel {
                low: p,
                high: q,
                gate: g,
            });
        }
    }
    // G_L ... G_1 u = I, so u = G_1^dag ... G_L^dag and G_L^dag runs first.
    applied
        .into_iter()
        .rev()
        .map(|t| TwoLevel {
            gate: t.gate.adjoint(),
            ..t
        })
        .collect()
}

#[derive(Debug, Clone)]
enum Prim {
    One(usize, Matrix2<C64>),
    Cz(usize, usize),
}

struct Emitter {
    prims: Vec<Prim>,
}

impl Emitter {
    fn one(&mut self, q: usize, m: Matrix2<C64>) {
        self.prims.push(Prim::One(q, m));
    }

    fn cx(&mut self, control: usize, target: usize) {
        self.one(target, gates::hadamard());
        self.prims.push(Prim::Cz(control, target));
        self.one(target, gates::hadamard());
    }

    /// A, B, C with `ABC = I` and `A X B X C = v` for `v` in SU(2).
    fn abc(v: &Matrix2<C64>) -> [Matrix2<C64>; 3] {
        let e = zyz(v);
        // e.phase is 0 or pi for an SU(2) input; RZ(a + 2 pi) = -RZ(a) absorbs the sign.
        let a = if e.phase.cos() < 0.0 {
            e.a + 2.0 * std::f64::consts::PI
        } else {
            e.a
        };
        [
            gates::rz(a) * gates::ry(e.b / 2.0),
            gates::ry(-e.b / 2.0) * gates::rz(-(e.c + a) / 2.0),
            gates::rz((e.c - a) / 2.0),
        ]
    }

    fn controlled(&mut self, control: usize, target: usize, v: &Matrix2<C64>) {
        let [a, b, c] = Emitter::abc(v);
        self.one(target, c);
        self.cx(control, target);
        self.one(target, b);
        self.cx(control, target);
        self.one(target, a);
    }

    fn doubly_controlled(&mut self, c1: usize, c2: usize, target: usize, w: &Matrix2<C64>) {
        let v = su2_sqrt(w);
        let [a, b, c] = Emitter::abc(&v);
        self.one(target, c);
        self.cx(c2, target);
        self.one(target, b);
        self.cx(c1, c2);
        self.cx(c1, target);
        self.one(target, b.adjoint());
        self.cx(c2, target);
        self.cx(c1, c2);
        self.cx(c1, target);
        self.one(target, b);
        self.cx(c1, target);
        self.one(target, a);
    }

    fn two_level(&mut self, m: usize, t: &TwoLevel) {
        let flip = t.low ^ t.high;
        debug_assert_eq!(flip.count_ones(), 1);
        let target = m - 1 - flip.trailing_zeros() as usize;
        let gate = if t.low & flip == 0 {
            t.gate
        } else {
            gates::pauli_x() * t.gate * gates::pauli_x()
        };
        let controls: Vec<(usize, bool)> = (0..m)
            .filter(|&q| q != target)
            .map(|q| (q, t.low >> (m - 1 - q) & 1 == 1))
            .collect();
        for &(q, on) in &controls {
            if !on {
                self.one(q, gates::pauli_x());
            }
        }
        match controls.as_slice() {
            [] => self.one(target, gate),
            [(c, _)] => self.controlled(*c, target, &gate),
            [(c1, _), (c2, _)] => self.doubly_controlled(*c1, *c2, target, &gate),
            _ => unreachable!("at most {MAX_SYNTH_QUBITS} qubits"),
        }
        for &(q, on) in &controls {
            if !on {
                self.one(q, gates::pauli_x());
            }
        }
    }

    /// Fuses runs of single-qubit factors per wire and lowers them to gates.
    fn finish(self, m: usize) -> Circuit {
        let mut circuit = Circuit::new(m).expect("m >= 1");
        let mut pending: Vec<Option<Matrix2<C64>>> = vec![None; m];
        let flush = |q: usize, pending: &mut Vec<Option<Matrix2<C64>>>, circuit: &mut Circuit| {
            if let Some(u) = pending[q].take() {
                for g in single_qubit_gates(q, &u) {
                    circuit.push_unchecked(g);
                }
            }
        };
        for p in self.prims {
            match p {
                Prim::One(q, u) => {
                    pending[q] = Some(u * pending[q].unwrap_or_else(Matrix2::identity));
                }
                Prim::Cz(a, b) => {
                    flush(a, &mut pending, &mut circuit);
                    flush(b, &mut pending, &mut circuit);
                    circuit.push_unchecked(GateApp::two(GateKind::Cz, a, b));
                }
            }
        }
        for q in 0..m {
            flush(q, &mut pending, &mut circuit);
        }
        circuit
    }
}

fn near(a: &Matrix2<C64>, b: &Matrix2<C64>) -> bool {
    (a - b).iter().all(|z| z.norm() <= MATCH_EPS)
}

/// Gates realising `u` on qubit `q` up to global phase.
pub(crate) fn single_qubit_gates(q: usize, u: &Matrix2<C64>) -> Vec<GateApp> {
    let one = |k: GateKind| GateApp::one(k, q);
    let pivot = u
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("four entries");
    let o = u * C64::from_polar(1.0, -pivot.arg());

    if o.iter().all(|z| z.im.abs() <= MATCH_EPS) {
        let o = o.map(|z| C64::new(z.re, 0.0));
        for (kind, m) in [
            (GateKind::H, gates::hadamard()),
            (GateKind::X, gates::pauli_x()),
            (GateKind::Z, gates::pauli_z()),
        ] {
            if near(&o, &m) || near(&o, &-m) {
                return vec![one(kind)];
            }
        }
        let (c, s) = (o[(0, 0)].re, o[(1, 0)].re);
        let det = o.determinant().re;
        let theta = 2.0 * s.atan2(c);
        let trivial = (theta / 2.0).sin().abs() <= MATCH_EPS;
        let mut out = Vec::new();
        // det -1: o = RY(theta) Z.
        if det < 0.0 {
            out.push(one(GateKind::Z));
        }
        if !trivial {
            out.push(one(GateKind::Ry(theta)));
        }
        return out;
    }

    if u[(0, 1)].norm() <= MATCH_EPS && u[(1, 0)].norm() <= MATCH_EPS {
        let lambda = (u[(1, 1)] / u[(0, 0)]).arg();
        if (lambda - std::f64::consts::FRAC_PI_2).abs() <= MATCH_EPS {
            return vec![one(GateKind::S)];
        }
        if (lambda + std::f64::consts::FRAC_PI_2).abs() <= MATCH_EPS {
            return vec![one(GateKind::Sdg)];
        }
    }

    let e = euler_xyx(u).expect("fused factors are unitary");
    let skip = |t: f64| (t / 2.0).sin().abs() <= MATCH_EPS;
    if skip(e.beta) && (e.beta / 2.0).cos() > 0.0 {
        let t = e.alpha + e.gamma;
        return if skip(t) {
            vec![]
        } else {
            vec![one(GateKind::Rx(t))]
        };
    }
    let mut out = Vec::new();
    if !skip(e.gamma) {
        out.push(one(GateKind::Rx(e.gamma)));
    }
    out.push(one(GateKind::Ry(e.beta)));
    if !skip(e.alpha) {
        out.push(one(GateKind::Rx(e.alpha)));
    }
    out
}

/// Decomposes an `m`-qubit unitary (`m <= 3`) into single-qubit gates and CZ,
/// exact up to global phase.
pub fn decompose_su2m(u: &DenseUnitary) -> Result<Circuit, SynthError> {
    let m = u.num_qubits();
    if !(1..=MAX_SYNTH_QUBITS).contains(&m) {
        return Err(SynthError::UnsupportedSize(m));
    }
    let err = u.unitarity_error();
    if err.is_nan() || err > 1e-10 {
        return Err(SynthError::NotUnitary(err));
    }
    let mut emitter = Emitter { prims: Vec::new() };
    for t in two_level_factors(u.matrix()) {
        emitter.two_level(m, &t);
    }
    Ok(emitter.finish(m))
}
