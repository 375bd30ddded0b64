mod common;

use catalyst_lowering::ir::{
    parse_circuit, serialize_circuit, Circuit, CircuitError, GateKind, GateSetProfile, GateTag,
};
use common::random_circuit;
use proptest::prelude::*;

#[test]
fn cs_gadget_text_parses_to_two_h_two_ccz() {
    let c = parse_circuit("qubits 4\nH 3\nCCZ 1 2 3\nH 3\nCCZ 1 2 3").unwrap();
    assert_eq!(c.len(), 4);
    let counts = c.gate_counts();
    assert_eq!(counts[GateTag::H], 2);
    assert_eq!(counts[GateTag::Ccz], 2);
    assert!(c.check_membership(GateSetProfile::Hccz).is_empty());
}

#[test]
fn serialize_reference_strings() {
    let mut c = Circuit::new(1).unwrap();
    c.add(GateKind::H, &[0]).unwrap();
    assert_eq!(serialize_circuit(&c), "qubits 1\nH 0");
    let mut c = Circuit::new(1).unwrap();
    c.add(GateKind::Ry(std::f64::consts::PI), &[0]).unwrap();
    assert_eq!(serialize_circuit(&c), "qubits 1\nRY(3.1415926535897931) 0");
}

#[test]
fn rejects_malformed_input() {
    let bad = [
        "qubits 3\nCCZ 0 0 1",
        "H 0",
        "qubits 1\nFOO 0",
        "qubits 1\nRY 0",
        "qubits 1\nH(0.5) 0",
        "qubits 1\nRY(abc) 0",
        "qubits 1\nRY(inf) 0",
        "qubits 2\nCZ 0",
        "qubits 2\nH 2",
        "qubits 0",
    ];
    for text in bad {
        assert!(parse_circuit(text).is_err(), "{text:?} should fail");
    }
    match parse_circuit("qubits 2\nH 0\n\nCZ 0 5") {
        Err(CircuitError::AtLine { line, .. }) => assert_eq!(line, 4),
        other => panic!("{other:?}"),
    }
}

#[test]
fn membership_violations_are_indexed() {
    let c = parse_circuit("qubits 1\nH 0\nS 0").unwrap();
    let v = c.check_membership(GateSetProfile::Hccz);
    assert_eq!(v.len(), 1);
    assert_eq!((v[0].index, v[0].tag), (1, GateTag::S));
    let ry = parse_circuit("qubits 1\nRY(0.3) 0").unwrap();
    assert!(ry.check_membership(GateSetProfile::RealO2Ccz).is_empty());
}

#[test]
fn hundred_random_circuits_serialize_byte_identically() {
    for seed in 0..100 {
        let c = random_circuit(seed, 1 + (seed as usize % 6), 25, &GateTag::ALL);
        let s1 = serialize_circuit(&c);
        let back = parse_circuit(&s1).unwrap();
        assert_eq!(back, c, "seed {seed}");
        assert_eq!(serialize_circuit(&back), s1);
    }
}

/// Text with random casing, comments, blank lines and CRLF endings.
fn noisy_text(c: &Circuit, flips: &[bool]) -> String {
    let mut out = String::new();
    out.push_str("# header comment\r\n");
    out.push_str(&format!("qubits {}\n", c.num_qubits()));
    for (i, line) in serialize_circuit(c).lines().skip(1).enumerate() {
        let line = if flips.get(i).copied().unwrap_or(false) {
            line.to_lowercase()
        } else {
            line.to_string()
        };
        out.push_str(&format!("  {line}   # gate {i}\r\n\n"));
    }
    out
}

proptest! {
    #[test]
    fn parse_inverts_serialize(n in 1usize..=6, len in 0usize..40, seed in any::<u64>(), flips in proptest::collection::vec(any::<bool>(), 40)) {
        let c = random_circuit(seed, n, len, &GateTag::ALL);
        let text = serialize_circuit(&c);
        prop_assert_eq!(&parse_circuit(&text).unwrap(), &c);
        prop_assert_eq!(&parse_circuit(&noisy_text(&c, &flips)).unwrap(), &c);
    }

    #[test]
    fn counts_sum_to_length(n in 1usize..=5, len in 0usize..60, seed in any::<u64>()) {
        let c = random_circuit(seed, n, len, &GateTag::ALL);
        prop_assert_eq!(c.gate_counts().total(), c.len());
        prop_assert!(c.check_membership(GateSetProfile::Full).is_empty());
    }

    #[test]
    fn angles_round_trip_exactly(t in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
        let mut c = Circuit::new(2).unwrap();
        c.add(GateKind::Cry(t), &[1, 0]).unwrap();
        let back = parse_circuit(&serialize_circuit(&c)).unwrap();
        match back.gates()[0].kind() {
            GateKind::Cry(u) => prop_assert_eq!(u.to_bits(), t.to_bits()),
            other => prop_assert!(false, "{:?}", other),
        }
    }
}
