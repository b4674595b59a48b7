//! Three-valued outcomes shared by every semi-decision in the crate.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Search bounds that were exhausted without reaching a decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Horizon {
    pub bound: u64,
    pub note: String,
}

impl Horizon {
    pub fn new(bound: u64, note: impl Into<String>) -> Self {
        Horizon {
            bound,
            note: note.into(),
        }
    }
}

impl fmt::Display for Horizon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (bound {})", self.note, self.bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict3 {
    True,
    False,
    Unknown { horizon: Horizon },
}

impl Verdict3 {
    pub fn unknown(bound: u64, note: impl Into<String>) -> Self {
        Verdict3::Unknown {
            horizon: Horizon::new(bound, note),
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict3::True
        } else {
            Verdict3::False
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Verdict3::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Verdict3::False)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict3::Unknown { .. })
    }

    /// Kleene conjunction: False dominates, then Unknown.
    pub fn and(self, other: Verdict3) -> Verdict3 {
        match (self, other) {
            (Verdict3::False, _) | (_, Verdict3::False) => Verdict3::False,
            (u @ Verdict3::Unknown { .. }, _) | (_, u @ Verdict3::Unknown { .. }) => u,
            _ => Verdict3::True,
        }
    }

    /// Kleene disjunction: True dominates, then Unknown.
    pub fn or(self, other: Verdict3) -> Verdict3 {
        match (self, other) {
            (Verdict3::True, _) | (_, Verdict3::True) => Verdict3::True,
            (u @ Verdict3::Unknown { .. }, _) | (_, u @ Verdict3::Unknown { .. }) => u,
            _ => Verdict3::False,
        }
    }
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict3::True => f.write_str("true"),
            Verdict3::False => f.write_str("false"),
            Verdict3::Unknown { horizon } => write!(f, "unknown: {horizon}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kleene_tables() {
        let u = || Verdict3::unknown(1, "x");
        assert_eq!(Verdict3::True.and(Verdict3::False), Verdict3::False);
        assert!(Verdict3::True.and(u()).is_unknown());
        assert_eq!(u().and(Verdict3::False), Verdict3::False);
        assert_eq!(u().or(Verdict3::True), Verdict3::True);
        assert!(Verdict3::False.or(u()).is_unknown());
        assert_eq!(Verdict3::False.or(Verdict3::False), Verdict3::False);
    }
}
