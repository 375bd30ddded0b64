use std::fmt;
use std::str::FromStr;

use super::{Circuit, GateTag};

/// A named gate set, used as the target of lowering passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateSetProfile {
    /// `{H, CCZ}`.
    Hccz,
    /// `{H, CS}`.
    Hcs,
    /// Real orthogonal single-qubit gates `{H, X, Z, RY}` plus CCZ.
    RealO2Ccz,
    /// Real orthogonal single-qubit gates plus CZ. Lowering to this target
    /// needs no ancilla.
    RealO2Cz,
    /// Everything.
    Full,
}

/// A gate that falls outside a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub tag: GateTag,
}

impl GateSetProfile {
    pub const ALL: [GateSetProfile; 5] = [
        GateSetProfile::Hccz,
        GateSetProfile::Hcs,
        GateSetProfile::RealO2Ccz,
        GateSetProfile::RealO2Cz,
        GateSetProfile::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateSetProfile::Hccz => "HCCZ",
            GateSetProfile::Hcs => "HCS",
            GateSetProfile::RealO2Ccz => "REAL_O2_CCZ",
            GateSetProfile::RealO2Cz => "REAL_O2_CZ",
            GateSetProfile::Full => "FULL",
        }
    }

    pub fn admits(self, tag: GateTag) -> bool {
        use GateTag::*;
        match self {
            GateSetProfile::Hccz => matches!(tag, H | Ccz),
            GateSetProfile::Hcs => matches!(tag, H | Cs),
            GateSetProfile::RealO2Ccz => matches!(tag, H | X | Z | Ry | Ccz),
            GateSetProfile::RealO2Cz => matches!(tag, H | X | Z | Ry | Cz),
            GateSetProfile::Full => true,
        }
    }

    pub fn violations(self, c: &Circuit) -> Vec<Violation> {
        c.gates()
            .iter()
            .enumerate()
            .filter(|(_, g)| !self.admits(g.tag()))
            .map(|(index, g)| Violation {
                index,
                tag: g.tag(),
            })
            .collect()
    }
}

impl fmt::Display for GateSetProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateSetProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateSetProfile::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown gate-set profile `{s}`"))
    }
}
