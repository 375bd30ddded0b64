//! Shared helpers for the integration tests: seeded random circuits and an
//! oracle that builds circuit unitaries from Kronecker products without
//! touching the library's simulator.

#![allow(dead_code)]

use catalyst_lowering::ir::{Circuit, GateKind, GateTag};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub type M = DMatrix<C64>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn m2(a: C64, b: C64, cc: C64, d: C64) -> M {
    M::from_row_slice(2, 2, &[a, b, cc, d])
}

fn one_qubit(kind: GateKind) -> M {
    let (z, o) = (c(0.0, 0.0), c(1.0, 0.0));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        GateKind::H => m2(c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)),
        GateKind::X => m2(z, o, o, z),
        GateKind::Y => m2(z, c(0.0, -1.0), c(0.0, 1.0), z),
        GateKind::Z => m2(o, z, z, -o),
        GateKind::S => m2(o, z, z, c(0.0, 1.0)),
        GateKind::Sdg => m2(o, z, z, c(0.0, -1.0)),
        GateKind::Rx(t) => {
            let (s, co) = (t / 2.0).sin_cos();
            m2(c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0))
        }
        GateKind::Ry(t) => {
            let (s, co) = (t / 2.0).sin_cos();
            m2(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0))
        }
        GateKind::Rz(t) => m2(
            C64::from_polar(1.0, -t / 2.0),
            z,
            z,
            C64::from_polar(1.0, t / 2.0),
        ),
        other => panic!("{other:?} is not a one-qubit gate"),
    }
}

fn proj(bit: usize) -> M {
    let (z, o) = (c(0.0, 0.0), c(1.0, 0.0));
    if bit == 0 {
        m2(o, z, z, z)
    } else {
        m2(z, z, z, o)
    }
}

/// Kronecker product over all `n` wires, with `factors` placed on their wires
/// and identity elsewhere.
fn kron_on(n: usize, factors: &[(usize, M)]) -> M {
    let mut acc = M::identity(1, 1);
    for q in 0..n {
        let f = factors
            .iter()
            .find(|(w, _)| *w == q)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| M::identity(2, 2));
        acc = acc.kronecker(&f);
    }
    acc
}

/// Full-register matrix of one gate, written as a sum of Kronecker products.
pub fn embedded(n: usize, kind: GateKind, ops: &[usize]) -> M {
    let controlled =
        |u: M| kron_on(n, &[(ops[0], proj(0))]) + kron_on(n, &[(ops[0], proj(1)), (ops[1], u)]);
    match kind {
        GateKind::Cz => controlled(one_qubit(GateKind::Z)),
        GateKind::Cs => controlled(one_qubit(GateKind::S)),
        GateKind::Cry(t) => controlled(one_qubit(GateKind::Ry(t))),
        GateKind::Ccz => {
            let p111 = kron_on(
                n,
                &[(ops[0], proj(1)), (ops[1], proj(1)), (ops[2], proj(1))],
            );
            M::identity(1 << n, 1 << n) - p111 * c(2.0, 0.0)
        }
        k => kron_on(n, &[(ops[0], one_qubit(k))]),
    }
}

/// Product of embedded gate matrices, last gate leftmost.
pub fn oracle_unitary(circ: &Circuit) -> M {
    let n = circ.num_qubits();
    circ.gates()
        .iter()
        .fold(M::identity(1 << n, 1 << n), |acc, g| {
            embedded(n, g.kind(), g.operands()) * acc
        })
}

pub fn random_kind(rng: &mut impl Rng, tags: &[GateTag]) -> GateKind {
    let tag = tags[rng.random_range(0..tags.len())];
    let angle = rng.random_range(-7.0..7.0);
    GateKind::from_parts(tag, tag.has_angle().then_some(angle)).expect("valid parts")
}

/// Random circuit on `n` qubits with `len` gates drawn uniformly from `tags`
/// (gates wider than the register are skipped over).
pub fn random_circuit(seed: u64, n: usize, len: usize, tags: &[GateTag]) -> Circuit {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let usable: Vec<GateTag> = tags.iter().copied().filter(|t| t.arity() <= n).collect();
    let mut circ = Circuit::new(n).unwrap();
    for _ in 0..len {
        let kind = random_kind(&mut rng, &usable);
        let mut wires: Vec<usize> = (0..n).collect();
        let mut ops = Vec::new();
        for _ in 0..kind.arity() {
            ops.push(wires.swap_remove(rng.random_range(0..wires.len())));
        }
        circ.add(kind, &ops).unwrap();
    }
    circ
}

pub fn max_abs_diff(a: &M, b: &M) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub const REAL_TAGS: [GateTag; 5] = [
    GateTag::H,
    GateTag::X,
    GateTag::Z,
    GateTag::Ry,
    GateTag::Ccz,
];
