use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::MotionError;

/// One of the five complexity criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    /// Steps and footwork.
    Footwork,
    /// Dense movement.
    Density,
    /// Rotations and direction changes.
    Rotation,
    /// Multi-limb coordination.
    Coordination,
    /// Asymmetry of bilateral limbs.
    Asymmetry,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::Footwork,
        Criterion::Density,
        Criterion::Rotation,
        Criterion::Coordination,
        Criterion::Asymmetry,
    ];

    /// Zero-based index (C1 is 0).
    pub fn index(self) -> usize {
        self as usize
    }

    /// One-based number as used in `c1`..`c5`.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get((n as usize).wrapping_sub(1)).copied()
    }

    pub fn key(self) -> &'static str {
        ["c1", "c2", "c3", "c4", "c5"][self.index()]
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Criterion {
    type Err = MotionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let n = t.strip_prefix('c').unwrap_or(&t);
        n.parse::<u8>()
            .ok()
            .and_then(Criterion::from_number)
            .ok_or_else(|| MotionError::InvalidParameter(format!("unknown criterion {s:?}")))
    }
}

impl Serialize for Criterion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for Criterion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = u8::deserialize(d)?;
        Criterion::from_number(n).ok_or_else(|| serde::de::Error::custom(format!("criterion {n} out of range")))
    }
}
