use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A value of the chain `F_0 < F_1 < … < 0 < … < T_1 < T_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    F(usize),
    Zero,
    T(usize),
}

impl TruthValue {
    pub const BOTTOM: TruthValue = TruthValue::F(0);
    pub const TOP: TruthValue = TruthValue::T(0);

    /// The level of `F_α` or `T_α`; `None` for `0`.
    pub fn level(self) -> Option<usize> {
        match self {
            TruthValue::F(a) | TruthValue::T(a) => Some(a),
            TruthValue::Zero => None,
        }
    }

    /// Value of `¬y` when `y` has this value.
    pub fn negate(self) -> TruthValue {
        match self {
            TruthValue::F(a) => TruthValue::T(a + 1),
            TruthValue::T(a) => TruthValue::F(a + 1),
            TruthValue::Zero => TruthValue::Zero,
        }
    }

    /// Values of level `depth` or beyond become `0`.
    pub fn truncate(self, depth: usize) -> TruthValue {
        match self.level() {
            Some(a) if a >= depth => TruthValue::Zero,
            _ => self,
        }
    }

    /// Position in the chain of the depth-`D` truncation, `0..=2D`.
    pub fn rank(self, depth: usize) -> usize {
        match self {
            TruthValue::F(a) => a,
            TruthValue::Zero => depth,
            TruthValue::T(a) => 2 * depth - a,
        }
    }

    /// The depth-`D` chain `F_0 < … < F_{D-1} < 0 < T_{D-1} < … < T_0`.
    pub fn chain(depth: usize) -> Vec<TruthValue> {
        (0..depth)
            .map(TruthValue::F)
            .chain(std::iter::once(TruthValue::Zero))
            .chain((0..depth).rev().map(TruthValue::T))
            .collect()
    }

    pub fn collapse(self) -> Truth3 {
        match self {
            TruthValue::F(_) => Truth3::False,
            TruthValue::Zero => Truth3::Undef,
            TruthValue::T(_) => Truth3::True,
        }
    }
}

impl Ord for TruthValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use TruthValue::*;
        match (self, other) {
            (F(a), F(b)) => a.cmp(b),
            (T(a), T(b)) => b.cmp(a),
            (Zero, Zero) => Ordering::Equal,
            (F(_), _) | (Zero, T(_)) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for TruthValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue::F(a) => write!(f, "F_{a}"),
            TruthValue::Zero => f.write_str("0"),
            TruthValue::T(a) => write!(f, "T_{a}"),
        }
    }
}

impl FromStr for TruthValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Input(format!("not a truth value: `{s}`"));
        if s == "0" {
            return Ok(TruthValue::Zero);
        }
        let (tag, level) = s.split_once('_').ok_or_else(bad)?;
        let level: usize = level.parse().map_err(|_| bad())?;
        match tag {
            "F" => Ok(TruthValue::F(level)),
            "T" => Ok(TruthValue::T(level)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth3 {
    False,
    Undef,
    True,
}

impl fmt::Display for Truth3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth3::False => "false",
            Truth3::Undef => "undef",
            Truth3::True => "true",
        })
    }
}
