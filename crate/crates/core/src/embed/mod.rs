//! The finite-embeddability relation `A ≤fe B`: every finite `F ⊆ A` has some
//! `k` with `F + k ⊆ B`.
//!
//! For eventually periodic `B` the leftward shifts `B - k` take only the
//! values `k < t_B + p_B`, so the orbit is finite and closed, and `A ≤fe B`
//! reduces to `A ⊆ B - k` for one of those `k`. When no such `k` exists, the
//! least violating element for each of them forms a finite `F ⊆ A` with no
//! translate at all.

mod bprime;
mod decide;
mod translate;

pub use bprime::{construct_bprime, verify_bprime, BPrimeResult, WitnessExhausted};
pub use decide::{
    fe_bounded, fe_decide, fe_equiv, includes_translate, proper_fe, verify_verdict, ProperFeReport,
    TranslateVerdict,
};
pub use translate::{least_witness, translate_witnesses, witness_set};

use crate::verdict::Horizon;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixWitness {
    pub n: u64,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeCertificate {
    /// `A + k ⊆ B`.
    UniformShift { k: u64 },
    /// `A ⊆ B - k`, i.e. `A` lies under a member of the leftward-shift orbit of `B`.
    ClosureShift { k: u64 },
    /// `(A ∩ n) + k ⊆ B` for each listed pair.
    PrefixWitnesses { witnesses: Vec<PrefixWitness> },
}

/// One line of a residue refutation: shift `k` (standing for its whole class) fails on `violated`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueStep {
    pub shift: u64,
    /// `None` for a transient shift `k < t_B`; `Some(p_B)` when `k` stands for `k + p_B·ℕ`.
    pub period: Option<u64>,
    pub violated: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exhaustiveness {
    ResidueProof { threshold: u64, period: u64, steps: Vec<ResidueStep> },
    /// Every shift `k >= bound` fails because `B ⊆ [0, bound)`; shifts below are listed.
    BoundedDomain { bound: u64, steps: Vec<ResidueStep> },
}

/// A finite `F ⊆ A` with `⋂_{a∈F} (B - a) = ∅`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeRefutation {
    pub finite_part: Vec<u64>,
    pub exhaustiveness: Exhaustiveness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FeVerdict {
    Embeds { certificate: FeCertificate },
    Refuted { refutation: FeRefutation },
    Unknown { horizon: Horizon },
}

impl FeVerdict {
    pub fn embeds(&self) -> bool {
        matches!(self, FeVerdict::Embeds { .. })
    }

    pub fn refuted(&self) -> bool {
        matches!(self, FeVerdict::Refuted { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, FeVerdict::Unknown { .. })
    }

    pub fn verdict(&self) -> crate::Verdict3 {
        match self {
            FeVerdict::Embeds { .. } => crate::Verdict3::True,
            FeVerdict::Refuted { .. } => crate::Verdict3::False,
            FeVerdict::Unknown { horizon } => crate::Verdict3::Unknown {
                horizon: horizon.clone(),
            },
        }
    }

    /// Exit status convention: 0 embeds, 1 refuted, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            FeVerdict::Embeds { .. } => 0,
            FeVerdict::Refuted { .. } => 1,
            FeVerdict::Unknown { .. } => 2,
        }
    }
}
