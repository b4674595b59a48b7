use super::shape::ShapeInclusion;
use super::{GenKind, Generator, NatSet, Periodic};
use crate::error::{Error, Result};
use crate::verdict::{Horizon, Verdict3};
use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeSet;

/// Search bound used by the horizon-free convenience forms.
pub const DEFAULT_HORIZON: u64 = 1 << 16;

/// Result of a subset query, with a refuting element when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Inclusion {
    Holds,
    Fails { witness: u64 },
    Unknown { horizon: Horizon },
}

impl Inclusion {
    pub fn verdict(&self) -> Verdict3 {
        match self {
            Inclusion::Holds => Verdict3::True,
            Inclusion::Fails { .. } => Verdict3::False,
            Inclusion::Unknown { horizon } => Verdict3::Unknown {
                horizon: horizon.clone(),
            },
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Holds)
    }
}

fn wrap(name: String, kind: GenKind) -> NatSet {
    NatSet::Generator(Generator::from_kind(name, kind))
}

impl NatSet {
    /// `S + k`.
    pub fn shift_right(&self, k: u64) -> NatSet {
        if k == 0 {
            return self.clone();
        }
        match self {
            NatSet::Finite(f) => NatSet::finite(f.elements().iter().map(|x| x + k)),
            NatSet::Periodic(p) => p.shift_right(k).into(),
            NatSet::Generator(g) => match g.kind() {
                GenKind::Blocks(s) => NatSet::Generator(Generator::blocks(
                    format!("({} >> {k})", g.name()),
                    s.shift_right(k),
                )),
                GenKind::ShiftRight(inner, j) => inner.shift_right(j + k),
                _ => wrap(format!("({} >> {k})", g.name()), GenKind::ShiftRight(self.clone(), k)),
            },
        }
    }

    /// `S - k = {x : x + k ∈ S}`.
    pub fn shift_left(&self, k: u64) -> NatSet {
        if k == 0 {
            return self.clone();
        }
        match self {
            NatSet::Finite(f) => NatSet::finite(f.elements().iter().filter(|&&x| x >= k).map(|x| x - k)),
            NatSet::Periodic(p) => p.shift_left(k).into(),
            NatSet::Generator(g) => match g.kind() {
                GenKind::Blocks(s) => NatSet::Generator(Generator::blocks(
                    format!("({} << {k})", g.name()),
                    s.shift_left(k),
                )),
                GenKind::ShiftLeft(inner, j) => inner.shift_left(j + k),
                _ => wrap(format!("({} << {k})", g.name()), GenKind::ShiftLeft(self.clone(), k)),
            },
        }
    }

    /// `S ∖ [0, n)`.
    pub fn tail(&self, n: u64) -> NatSet {
        if n == 0 {
            return self.clone();
        }
        match self {
            NatSet::Generator(g) => match g.shape() {
                Some(s) => NatSet::Generator(Generator::blocks(
                    format!("({} \\ interval(0,{n}))", g.name()),
                    s.tail(n),
                )),
                None => self.difference(&NatSet::interval(0, n)),
            },
            _ => self.difference(&NatSet::interval(0, n)),
        }
    }

    pub fn intersect(&self, other: &NatSet) -> NatSet {
        match (self, other) {
            (NatSet::Finite(f), s) | (s, NatSet::Finite(f)) => {
                NatSet::finite(f.elements().iter().copied().filter(|&x| s.member(x)))
            }
            (NatSet::Periodic(a), NatSet::Periodic(b)) => a.zip_with(b, |x, y| x && y).into(),
            _ => wrap(
                format!("({self} & {other})"),
                GenKind::Intersect(self.clone(), other.clone()),
            ),
        }
    }

    pub fn union(&self, other: &NatSet) -> NatSet {
        match (self.as_periodic(), other.as_periodic()) {
            (Some(a), Some(b)) => a.zip_with(&b, |x, y| x || y).into(),
            _ => wrap(
                format!("({self} | {other})"),
                GenKind::Union(self.clone(), other.clone()),
            ),
        }
    }

    /// `S ∖ T`.
    pub fn difference(&self, other: &NatSet) -> NatSet {
        match (self, other) {
            (NatSet::Finite(f), s) => NatSet::finite(f.elements().iter().copied().filter(|&x| !s.member(x))),
            // removing a whole prefix of a block shape keeps it a shape
            (NatSet::Generator(g), NatSet::Finite(f))
                if g.shape().is_some()
                    && f.max().is_some_and(|m| self.iter_range(0, m + 1).all(|x| f.contains(x))) =>
            {
                let n = f.max().expect("non-empty") + 1;
                NatSet::Generator(Generator::blocks(
                    format!("({self} \\ {other})"),
                    g.shape().expect("shape").tail(n),
                ))
            }
            _ => match (self.as_periodic(), other.as_periodic()) {
                (Some(a), Some(b)) => a.zip_with(&b, |x, y| x && !y).into(),
                _ => wrap(
                    format!("({self} \\ {other})"),
                    GenKind::Difference(self.clone(), other.clone()),
                ),
            },
        }
    }

    pub fn complement(&self) -> Result<NatSet> {
        match self.as_periodic() {
            Some(p) => Ok(p.map(|b| !b).into()),
            None => Err(Error::ComplementOfGeneratorTier),
        }
    }

    /// `{x mod m : x ∈ S, x >= t}` over one `lcm(p, m)` block of the tail.
    pub fn residues(&self, m: u64) -> Result<BTreeSet<u64>> {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be at least 1".into()));
        }
        let p = self.as_periodic().ok_or(Error::TierError { op: "residues" })?;
        let t = p.threshold();
        let block = p.period().lcm(&m);
        Ok((t..t + block).filter(|&x| p.member(x)).map(|x| x % m).collect())
    }

    /// `A ⊆ B` with the default search horizon.
    pub fn is_subset(&self, other: &NatSet) -> Inclusion {
        self.is_subset_within(other, DEFAULT_HORIZON)
    }

    /// `A ⊆ B`. Exact on the decidable tier, for finite `A`, for cofinite `B`,
    /// and between two block shapes; otherwise a refuting element is searched
    /// below `horizon`.
    pub fn is_subset_within(&self, other: &NatSet, horizon: u64) -> Inclusion {
        if let (Some(a), Some(b)) = (self.as_periodic(), other.as_periodic()) {
            let diff = a.zip_with(&b, |x, y| x && !y);
            return match diff.min_element() {
                None => Inclusion::Holds,
                Some(w) => Inclusion::Fails { witness: w },
            };
        }
        if let NatSet::Finite(f) = self {
            return match f.elements().iter().find(|&&x| !other.member(x)) {
                None => Inclusion::Holds,
                Some(&w) => Inclusion::Fails { witness: w },
            };
        }
        if let Some(b) = other.as_periodic() {
            if b.is_cofinite() {
                let missing: Vec<u64> = (0..b.threshold()).filter(|&x| !b.member(x)).collect();
                return match missing.into_iter().find(|&x| self.member(x)) {
                    None => Inclusion::Holds,
                    Some(w) => Inclusion::Fails { witness: w },
                };
            }
        }
        let shape_answer = match (self.shape(), other.shape(), other.as_periodic()) {
            (Some(a), Some(b), _) => a.subset_of(b),
            (Some(a), None, Some(b)) => a.subset_of_periodic(&b),
            _ => None,
        };
        match shape_answer {
            Some(ShapeInclusion::Holds) => return Inclusion::Holds,
            Some(ShapeInclusion::Fails { witness }) => return Inclusion::Fails { witness },
            None => {}
        }
        match self.iter_range(0, horizon).find(|&x| !other.member(x)) {
            Some(w) => Inclusion::Fails { witness: w },
            None => Inclusion::Unknown {
                horizon: Horizon::new(horizon, "no refuting element below the horizon"),
            },
        }
    }

    /// Non-emptiness, exact where possible, otherwise searched below `horizon`.
    pub fn is_nonempty_within(&self, horizon: u64) -> Verdict3 {
        match self.is_empty_exact() {
            Some(e) => Verdict3::from_bool(!e),
            None => match self.min_element_below(horizon) {
                Some(_) => Verdict3::True,
                None => Verdict3::unknown(horizon, "no element found below the horizon"),
            },
        }
    }
}

/// Normal form of an eventually periodic set: minimal period, then minimal threshold.
pub fn normalize(p: &Periodic) -> Periodic {
    Periodic::new(p.transient().clone(), p.mask().clone())
}
