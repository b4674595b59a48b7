//! Subsets of ℕ in three tiers: finite, eventually periodic, and generator-backed.
//!
//! The first two tiers are closed under shifts and Boolean operations and
//! every question about them is answered exactly. Generator-tier sets are
//! membership oracles with an ascending enumerator; operations on them build
//! symbolic wrappers and answers are exact only where a finite argument
//! exists (finite operands, cofinite supersets, exponential block shapes).

mod corpus;
mod expr;
mod ops;
mod periodic;
pub mod shape;

pub use corpus::Corpus;
pub use expr::{parse_ast, parse_expr, parse_expr_with, BinOp, Expr};
pub use ops::{normalize, Inclusion, DEFAULT_HORIZON};
pub use periodic::Periodic;
pub use shape::BlockShape;

use crate::bits::Bits;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub enum NatSet {
    Finite(FiniteSet),
    Periodic(Periodic),
    Generator(Generator),
}

/// Strictly increasing list of naturals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FiniteSet(Vec<u64>);

impl FiniteSet {
    pub fn new(mut v: Vec<u64>) -> Self {
        v.sort_unstable();
        v.dedup();
        FiniteSet(v)
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }
}

type MemberFn = dyn Fn(u64) -> bool + Send + Sync;
type RangeFn = dyn Fn(u64, u64) -> Box<dyn Iterator<Item = u64>> + Send + Sync;

/// A named membership oracle with an ascending enumerator.
#[derive(Clone)]
pub struct Generator {
    name: String,
    kind: Arc<GenKind>,
}

#[derive(Clone)]
pub(crate) enum GenKind {
    Blocks(BlockShape),
    Squares,
    Custom {
        member: Arc<MemberFn>,
        range: Arc<RangeFn>,
    },
    ShiftRight(NatSet, u64),
    ShiftLeft(NatSet, u64),
    Intersect(NatSet, NatSet),
    Union(NatSet, NatSet),
    Difference(NatSet, NatSet),
}

impl Generator {
    pub fn blocks(name: impl Into<String>, shape: BlockShape) -> Self {
        Generator::from_kind(name, GenKind::Blocks(shape))
    }

    pub fn squares() -> Self {
        Generator::from_kind("squares", GenKind::Squares)
    }

    /// A user-supplied oracle. `range(lo, hi)` must list exactly the members in `[lo, hi)`, ascending.
    pub fn custom(
        name: impl Into<String>,
        member: impl Fn(u64) -> bool + Send + Sync + 'static,
        range: impl Fn(u64, u64) -> Box<dyn Iterator<Item = u64>> + Send + Sync + 'static,
    ) -> Self {
        Generator::from_kind(
            name,
            GenKind::Custom {
                member: Arc::new(member),
                range: Arc::new(range),
            },
        )
    }

    pub(crate) fn from_kind(name: impl Into<String>, kind: GenKind) -> Self {
        Generator {
            name: name.into(),
            kind: Arc::new(kind),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn kind(&self) -> &GenKind {
        &self.kind
    }

    pub fn shape(&self) -> Option<&BlockShape> {
        match &*self.kind {
            GenKind::Blocks(s) => Some(s),
            _ => None,
        }
    }

    pub fn member(&self, x: u64) -> bool {
        match &*self.kind {
            GenKind::Blocks(s) => s.member(x),
            GenKind::Squares => {
                let r = x.isqrt();
                r * r == x
            }
            GenKind::Custom { member, .. } => member(x),
            GenKind::ShiftRight(s, k) => x >= *k && s.member(x - k),
            GenKind::ShiftLeft(s, k) => x.checked_add(*k).is_some_and(|y| s.member(y)),
            GenKind::Intersect(a, b) => a.member(x) && b.member(x),
            GenKind::Union(a, b) => a.member(x) || b.member(x),
            GenKind::Difference(a, b) => a.member(x) && !b.member(x),
        }
    }

    pub fn iter_range(&self, lo: u64, hi: u64) -> Box<dyn Iterator<Item = u64> + '_> {
        if lo >= hi {
            return Box::new(std::iter::empty());
        }
        match &*self.kind {
            GenKind::Blocks(s) => Box::new(s.iter_range(lo, hi)),
            GenKind::Squares => {
                let start = lo.isqrt() + u64::from(lo.isqrt().pow(2) < lo);
                Box::new((start..).map(|r| r * r).take_while(move |&x| x < hi))
            }
            GenKind::Custom { range, .. } => range(lo, hi),
            GenKind::ShiftRight(s, k) => {
                let k = *k;
                if hi <= k {
                    return Box::new(std::iter::empty());
                }
                Box::new(s.iter_range(lo.saturating_sub(k), hi - k).map(move |x| x + k))
            }
            GenKind::ShiftLeft(s, k) => {
                let k = *k;
                Box::new(
                    s.iter_range(lo.saturating_add(k), hi.saturating_add(k))
                        .map(move |x| x - k),
                )
            }
            GenKind::Intersect(a, b) => {
                // walk the generator side, which is the sparser one in practice
                let (walk, test) = if matches!(a, NatSet::Generator(_)) { (a, b) } else { (b, a) };
                Box::new(walk.iter_range(lo, hi).filter(move |&x| test.member(x)))
            }
            GenKind::Union(a, b) => Box::new(merge(a.iter_range(lo, hi), b.iter_range(lo, hi))),
            GenKind::Difference(a, b) => Box::new(a.iter_range(lo, hi).filter(move |&x| !b.member(x))),
        }
    }
}

fn merge<'a>(
    a: Box<dyn Iterator<Item = u64> + 'a>,
    b: Box<dyn Iterator<Item = u64> + 'a>,
) -> impl Iterator<Item = u64> + 'a {
    let mut a = a.peekable();
    let mut b = b.peekable();
    std::iter::from_fn(move || match (a.peek().copied(), b.peek().copied()) {
        (Some(x), Some(y)) => {
            if x < y {
                a.next()
            } else if y < x {
                b.next()
            } else {
                a.next();
                b.next()
            }
        }
        (Some(_), None) => a.next(),
        (None, Some(_)) => b.next(),
        (None, None) => None,
    })
}

/// Which representation a set is held in; ordered from strongest to weakest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Finite,
    EventuallyPeriodic,
    Generator,
}

/// Characteristic bits of a set over `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: u64,
    pub hi: u64,
    pub bits: Bits,
}

impl Window {
    pub fn contains(&self, x: u64) -> bool {
        x >= self.lo && x < self.hi && self.bits.get((x - self.lo) as usize)
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(move |i| self.lo + i as u64)
    }
}

impl NatSet {
    pub fn empty() -> Self {
        NatSet::Finite(FiniteSet::default())
    }

    pub fn naturals() -> Self {
        NatSet::Periodic(Periodic::naturals())
    }

    pub fn finite(elements: impl IntoIterator<Item = u64>) -> Self {
        NatSet::Finite(FiniteSet::new(elements.into_iter().collect()))
    }

    /// `[lo, hi)`.
    pub fn interval(lo: u64, hi: u64) -> Self {
        NatSet::finite(lo..hi.max(lo))
    }

    /// `{a, a+d, a+2d, ...}`; `d = 0` gives `{a}`.
    pub fn ap(a: u64, d: u64) -> Self {
        if d == 0 {
            NatSet::finite([a])
        } else {
            Periodic::arithmetic(a, d).into()
        }
    }

    pub fn periodic(transient: Bits, mask: Bits) -> Self {
        Periodic::new(transient, mask).into()
    }

    pub fn powers_of_two() -> Self {
        NatSet::Generator(Generator::blocks("pow2", BlockShape::powers_of_two()))
    }

    pub fn q_set() -> Self {
        NatSet::Generator(Generator::blocks("qset", BlockShape::q_set()))
    }

    pub fn squares() -> Self {
        NatSet::Generator(Generator::squares())
    }

    pub fn tier(&self) -> Tier {
        match self {
            NatSet::Finite(_) => Tier::Finite,
            NatSet::Periodic(_) => Tier::EventuallyPeriodic,
            NatSet::Generator(_) => Tier::Generator,
        }
    }

    pub fn is_decidable(&self) -> bool {
        !matches!(self, NatSet::Generator(_))
    }

    /// Eventually periodic view of a decidable set.
    pub fn as_periodic(&self) -> Option<Periodic> {
        match self {
            NatSet::Finite(f) => Some(Periodic::from_finite(f.elements())),
            NatSet::Periodic(p) => Some(p.clone()),
            NatSet::Generator(_) => None,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteSet> {
        match self {
            NatSet::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn shape(&self) -> Option<&BlockShape> {
        match self {
            NatSet::Generator(g) => g.shape(),
            _ => None,
        }
    }

    pub fn member(&self, x: u64) -> bool {
        match self {
            NatSet::Finite(f) => f.contains(x),
            NatSet::Periodic(p) => p.member(x),
            NatSet::Generator(g) => g.member(x),
        }
    }

    /// Ascending members in `[lo, hi)`.
    pub fn iter_range(&self, lo: u64, hi: u64) -> Box<dyn Iterator<Item = u64> + '_> {
        match self {
            NatSet::Finite(f) => Box::new(
                f.elements()
                    .iter()
                    .copied()
                    .skip_while(move |&x| x < lo)
                    .take_while(move |&x| x < hi),
            ),
            NatSet::Periodic(p) => Box::new(p.iter_range(lo, hi)),
            NatSet::Generator(g) => g.iter_range(lo, hi),
        }
    }

    /// `S ∩ [0, n)` as a finite set.
    pub fn prefix(&self, n: u64) -> FiniteSet {
        FiniteSet(self.iter_range(0, n).collect())
    }

    pub fn count_below(&self, n: u64) -> u64 {
        match self {
            NatSet::Finite(f) => f.elements().partition_point(|&x| x < n) as u64,
            _ => self.window(0, n).count() as u64,
        }
    }

    pub fn window(&self, lo: u64, hi: u64) -> Window {
        let hi = hi.max(lo);
        let len = (hi - lo) as usize;
        let bits = match self {
            NatSet::Periodic(p) => {
                let (t, per) = (p.threshold(), p.period());
                let phase = if lo >= t { (lo - t) % per } else { (per - (t - lo) % per) % per };
                let mut bits = Bits::repeating(p.mask(), phase as usize, len);
                for x in lo..hi.min(t) {
                    bits.set((x - lo) as usize, p.transient().get(x as usize));
                }
                bits
            }
            _ => {
                let mut bits = Bits::zeros(len);
                for x in self.iter_range(lo, hi) {
                    bits.set((x - lo) as usize, true);
                }
                bits
            }
        };
        Window { lo, hi, bits }
    }

    pub fn min_element_below(&self, horizon: u64) -> Option<u64> {
        self.iter_range(0, horizon).next()
    }

    /// Exact for decidable sets; `None` for generators.
    pub fn is_empty_exact(&self) -> Option<bool> {
        match self {
            NatSet::Finite(f) => Some(f.is_empty()),
            NatSet::Periodic(p) => Some(p.is_empty()),
            NatSet::Generator(g) => g.shape().map(|s| !s.is_infinite() && s.iter_range(0, u64::MAX).next().is_none()),
        }
    }

    pub fn is_infinite_exact(&self) -> Option<bool> {
        match self {
            NatSet::Finite(_) => Some(false),
            NatSet::Periodic(p) => Some(!p.is_finite()),
            NatSet::Generator(g) => g.shape().map(|s| s.is_infinite()),
        }
    }

    /// Structural equality of normal forms; `None` when a generator is involved.
    pub fn same_set(&self, other: &NatSet) -> Option<bool> {
        match (self, other) {
            (NatSet::Finite(a), NatSet::Finite(b)) => Some(a == b),
            (NatSet::Periodic(a), NatSet::Periodic(b)) => Some(a == b),
            (NatSet::Finite(_), NatSet::Periodic(_)) | (NatSet::Periodic(_), NatSet::Finite(_)) => {
                Some(false)
            }
            _ => None,
        }
    }
}

impl From<Periodic> for NatSet {
    fn from(p: Periodic) -> Self {
        if p.is_finite() {
            NatSet::Finite(FiniteSet(p.finite_elements()))
        } else {
            NatSet::Periodic(p)
        }
    }
}

impl From<FiniteSet> for NatSet {
    fn from(f: FiniteSet) -> Self {
        NatSet::Finite(f)
    }
}

impl fmt::Display for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatSet::Finite(s) if s.is_empty() => f.write_str("empty"),
            NatSet::Finite(s) => {
                f.write_str("{")?;
                for (i, x) in s.elements().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            NatSet::Periodic(p) => write!(f, "per({};{})", p.transient(), p.mask()),
            NatSet::Generator(g) => f.write_str(g.name()),
        }
    }
}

impl fmt::Debug for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatSet({self})")
    }
}

impl PartialEq for NatSet {
    /// Generator-tier sets are never equal to anything, themselves included.
    fn eq(&self, other: &Self) -> bool {
        self.same_set(other) == Some(true)
    }
}
