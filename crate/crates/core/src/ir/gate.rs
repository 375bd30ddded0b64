use std::fmt;

use super::CircuitError;

/// Gate identity without its parameter. Used as a key for counting and
/// for profile membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateTag {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    Rx,
    Ry,
    Rz,
    Cz,
    Cs,
    Cry,
    Ccz,
}

impl GateTag {
    pub const ALL: [GateTag; 13] = [
        GateTag::H,
        GateTag::X,
        GateTag::Y,
        GateTag::Z,
        GateTag::S,
        GateTag::Sdg,
        GateTag::Rx,
        GateTag::Ry,
        GateTag::Rz,
        GateTag::Cz,
        GateTag::Cs,
        GateTag::Cry,
        GateTag::Ccz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateTag::H => "H",
            GateTag::X => "X",
            GateTag::Y => "Y",
            GateTag::Z => "Z",
            GateTag::S => "S",
            GateTag::Sdg => "SDG",
            GateTag::Rx => "RX",
            GateTag::Ry => "RY",
            GateTag::Rz => "RZ",
            GateTag::Cz => "CZ",
            GateTag::Cs => "CS",
            GateTag::Cry => "CRY",
            GateTag::Ccz => "CCZ",
        }
    }

    /// Case-insensitive lookup by canonical name.
    pub fn from_name(name: &str) -> Option<GateTag> {
        GateTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(name))
    }

    pub fn arity(self) -> usize {
        match self {
            GateTag::Cz | GateTag::Cs | GateTag::Cry => 2,
            GateTag::Ccz => 3,
            _ => 1,
        }
    }

    pub fn has_angle(self) -> bool {
        matches!(self, GateTag::Rx | GateTag::Ry | GateTag::Rz | GateTag::Cry)
    }

    /// Position in [`GateTag::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for GateTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gate together with its rotation angle (radians) where it has one.
///
/// `Cry(phi)` is `|0><0| (x) I + |1><1| (x) RY(phi)` with the control as the
/// first operand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    Cz,
    Cs,
    Cry(f64),
    Ccz,
}

impl GateKind {
    pub fn tag(&self) -> GateTag {
        match self {
            GateKind::H => GateTag::H,
            GateKind::X => GateTag::X,
            GateKind::Y => GateTag::Y,
            GateKind::Z => GateTag::Z,
            GateKind::S => GateTag::S,
            GateKind::Sdg => GateTag::Sdg,
            GateKind::Rx(_) => GateTag::Rx,
            GateKind::Ry(_) => GateTag::Ry,
            GateKind::Rz(_) => GateTag::Rz,
            GateKind::Cz => GateTag::Cz,
            GateKind::Cs => GateTag::Cs,
            GateKind::Cry(_) => GateTag::Cry,
            GateKind::Ccz => GateTag::Ccz,
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::Rx(a) | GateKind::Ry(a) | GateKind::Rz(a) | GateKind::Cry(a) => Some(a),
            _ => None,
        }
    }

    pub fn arity(&self) -> usize {
        self.tag().arity()
    }

    /// Builds a kind from a tag and optional angle, enforcing that the
    /// angle is present (and finite) exactly for parameterized tags.
    pub fn from_parts(tag: GateTag, angle: Option<f64>) -> Result<GateKind, CircuitError> {
        match (tag.has_angle(), angle) {
            (true, None) => return Err(CircuitError::MissingAngle(tag)),
            (false, Some(_)) => return Err(CircuitError::UnexpectedAngle(tag)),
            (true, Some(a)) if !a.is_finite() => return Err(CircuitError::NonFiniteAngle(tag)),
            _ => {}
        }
        let a = angle.unwrap_or(0.0);
        Ok(match tag {
            GateTag::H => GateKind::H,
            GateTag::X => GateKind::X,
            GateTag::Y => GateKind::Y,
            GateTag::Z => GateKind::Z,
            GateTag::S => GateKind::S,
            GateTag::Sdg => GateKind::Sdg,
            GateTag::Rx => GateKind::Rx(a),
            GateTag::Ry => GateKind::Ry(a),
            GateTag::Rz => GateKind::Rz(a),
            GateTag::Cz => GateKind::Cz,
            GateTag::Cs => GateKind::Cs,
            GateTag::Cry => GateKind::Cry(a),
            GateTag::Ccz => GateKind::Ccz,
        })
    }

    /// CZ and CCZ are invariant under operand permutation.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, GateKind::Cz | GateKind::Ccz)
    }
}

/// A gate applied to concrete qubits. Controls come first, the target last.
#[derive(Debug, Clone, PartialEq)]
pub struct GateApp {
    kind: GateKind,
    operands: Vec<usize>,
}

impl GateApp {
    pub fn new(kind: GateKind, operands: Vec<usize>) -> Result<GateApp, CircuitError> {
        if let Some(a) = kind.angle() {
            if !a.is_finite() {
                return Err(CircuitError::NonFiniteAngle(kind.tag()));
            }
        }
        if operands.len() != kind.arity() {
            return Err(CircuitError::WrongOperandCount {
                tag: kind.tag(),
                expected: kind.arity(),
                found: operands.len(),
            });
        }
        for (i, q) in operands.iter().enumerate() {
            if operands[..i].contains(q) {
                return Err(CircuitError::DuplicateOperand(*q));
            }
        }
        Ok(GateApp { kind, operands })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn tag(&self) -> GateTag {
        self.kind.tag()
    }

    pub fn operands(&self) -> &[usize] {
        &self.operands
    }

    /// Semantic equality: symmetric gates compare their operands as sets.
    pub fn acts_like(&self, other: &GateApp) -> bool {
        if self.kind != other.kind {
            return false;
        }
        if self.kind.is_symmetric() {
            let mut a = self.operands.clone();
            let mut b = other.operands.clone();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        } else {
            self.operands == other.operands
        }
    }
}

// Shorthand constructors for the gates the builders emit. Operand counts are
// fixed by the function signature, so only distinctness can fail.
impl GateApp {
    pub(crate) fn one(kind: GateKind, q: usize) -> GateApp {
        GateApp {
            kind,
            operands: vec![q],
        }
    }

    pub(crate) fn two(kind: GateKind, a: usize, b: usize) -> GateApp {
        assert_ne!(a, b, "two-qubit gate on a single wire");
        GateApp {
            kind,
            operands: vec![a, b],
        }
    }

    pub(crate) fn ccz(a: usize, b: usize, c: usize) -> GateApp {
        assert!(a != b && b != c && a != c, "CCZ operands must be distinct");
        GateApp {
            kind: GateKind::Ccz,
            operands: vec![a, b, c],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tag_names_round_trip_case_insensitively() {
        for tag in GateTag::ALL {
            assert_eq!(GateTag::from_name(tag.name()), Some(tag));
            assert_eq!(GateTag::from_name(&tag.name().to_lowercase()), Some(tag));
        }
        assert_eq!(GateTag::from_name("T"), None);
    }

    #[test]
    fn arity_table() {
        let ones = [
            GateTag::H,
            GateTag::X,
            GateTag::Y,
            GateTag::Z,
            GateTag::S,
            GateTag::Sdg,
        ];
        assert!(ones.iter().all(|t| t.arity() == 1));
        assert_eq!(GateTag::Rx.arity(), 1);
        assert_eq!(GateTag::Cs.arity(), 2);
        assert_eq!(GateTag::Cry.arity(), 2);
        assert_eq!(GateTag::Ccz.arity(), 3);
    }

    #[test]
    fn angle_presence_is_enforced() {
        assert!(matches!(
            GateKind::from_parts(GateTag::Ry, None),
            Err(CircuitError::MissingAngle(GateTag::Ry))
        ));
        assert!(matches!(
            GateKind::from_parts(GateTag::H, Some(1.0)),
            Err(CircuitError::UnexpectedAngle(GateTag::H))
        ));
        assert!(GateKind::from_parts(GateTag::Rz, Some(f64::NAN)).is_err());
        assert_eq!(
            GateKind::from_parts(GateTag::Cry, Some(0.5)).unwrap(),
            GateKind::Cry(0.5)
        );
    }

    #[test]
    fn gate_app_validation() {
        assert!(matches!(
            GateApp::new(GateKind::Ccz, vec![0, 0, 1]),
            Err(CircuitError::DuplicateOperand(0))
        ));
        assert!(matches!(
            GateApp::new(GateKind::Cz, vec![0]),
            Err(CircuitError::WrongOperandCount { .. })
        ));
        assert!(GateApp::new(GateKind::Rx(f64::INFINITY), vec![0]).is_err());
    }

    #[test]
    fn symmetric_gates_compare_setwise() {
        let a = GateApp::new(GateKind::Ccz, vec![0, 1, 2]).unwrap();
        let b = GateApp::new(GateKind::Ccz, vec![2, 0, 1]).unwrap();
        assert!(a.acts_like(&b));
        assert_ne!(a, b);
        let c = GateApp::new(GateKind::Cs, vec![0, 1]).unwrap();
        let d = GateApp::new(GateKind::Cs, vec![1, 0]).unwrap();
        assert!(!c.acts_like(&d));
    }
}
