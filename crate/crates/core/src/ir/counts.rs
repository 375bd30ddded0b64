use std::ops::Index;

use serde::ser::{Serialize, SerializeMap, Serializer};

use super::{Circuit, GateTag};

/// Per-tag gate tally. Every tag is present; absent gates count as zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCounts([usize; 13]);

impl GateCounts {
    pub fn of(c: &Circuit) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in c.gates() {
            counts.0[g.tag().index()] += 1;
        }
        counts
    }

    pub fn get(&self, tag: GateTag) -> usize {
        self.0[tag.index()]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Non-zero entries in canonical tag order.
    pub fn nonzero(&self) -> impl Iterator<Item = (GateTag, usize)> + '_ {
        GateTag::ALL
            .into_iter()
            .map(|t| (t, self.get(t)))
            .filter(|&(_, n)| n > 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (GateTag, usize)> + '_ {
        GateTag::ALL.into_iter().map(|t| (t, self.get(t)))
    }
}

impl Index<GateTag> for GateCounts {
    type Output = usize;

    fn index(&self, tag: GateTag) -> &usize {
        &self.0[tag.index()]
    }
}

// Serialized as a JSON object keyed by canonical gate name, in tag order.
impl Serialize for GateCounts {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(GateTag::ALL.len()))?;
        for (tag, n) in self.iter() {
            map.serialize_entry(tag.name(), &n)?;
        }
        map.end()
    }
}
