use crate::error::{Error, Result};
use crate::natset::{Corpus, Inclusion, NatSet};
use crate::verdict::Verdict3;
use serde::Serialize;
use std::fmt;

/// Finitely many generators. The generated filter is exactly the supersets
/// of their full intersection, so membership is one subset test.
#[derive(Clone, Debug)]
pub struct FilterBase {
    generators: Vec<NatSet>,
    core: NatSet,
    fip: Verdict3,
}

impl FilterBase {
    /// FIP is decided exactly on the decidable tier and searched below `horizon` otherwise.
    pub fn new(generators: Vec<NatSet>, horizon: u64) -> Result<Self> {
        let mut it = generators.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::InvalidArgument("filter base needs at least one generator".into()))?
            .clone();
        let core = it.fold(first, |acc, g| acc.intersect(g));
        let fip = core.is_nonempty_within(horizon);
        Ok(FilterBase { generators, core, fip })
    }

    pub fn generators(&self) -> &[NatSet] {
        &self.generators
    }

    /// `⋂ generators`.
    pub fn core(&self) -> &NatSet {
        &self.core
    }

    pub fn fip(&self) -> &Verdict3 {
        &self.fip
    }
}

#[derive(Clone, Debug)]
pub enum ChainKind {
    /// `G_n = S ∖ [0, n)`.
    TailsOf(NatSet),
    /// `G_n = ⋂_{k <= n} (S - k)`.
    ShiftsDown(NatSet),
}

/// A descending chain `G_0 ⊇ G_1 ⊇ …`; the filter is all supersets of some `G_n`.
/// `index_cap` bounds index searches and the non-emptiness check.
#[derive(Clone, Debug)]
pub struct ParametricBase {
    kind: ChainKind,
    index_cap: u64,
    fip: Verdict3,
}

impl ParametricBase {
    /// Fails when some `G_n` with `n <= index_cap` is provably empty.
    pub fn new(kind: ChainKind, index_cap: u64, horizon: u64) -> Result<Self> {
        let mut base = ParametricBase {
            kind,
            index_cap,
            fip: Verdict3::True,
        };
        let last = base.member_at(index_cap);
        base.fip = match last.is_empty_exact() {
            Some(true) => {
                return Err(Error::FipViolation(format!("G_{index_cap} of {base} is empty")));
            }
            Some(false) => Verdict3::True,
            None => match &base.kind {
                ChainKind::TailsOf(s) => {
                    if s.iter_range(index_cap, index_cap.saturating_add(horizon)).next().is_some() {
                        Verdict3::True
                    } else {
                        Verdict3::unknown(horizon, "no element of the last chain member found")
                    }
                }
                ChainKind::ShiftsDown(_) => last.is_nonempty_within(horizon),
            },
        };
        Ok(base)
    }

    pub fn tails(s: NatSet, index_cap: u64, horizon: u64) -> Result<Self> {
        ParametricBase::new(ChainKind::TailsOf(s), index_cap, horizon)
    }

    pub fn shifts_down(s: NatSet, index_cap: u64, horizon: u64) -> Result<Self> {
        ParametricBase::new(ChainKind::ShiftsDown(s), index_cap, horizon)
    }

    pub fn kind(&self) -> &ChainKind {
        &self.kind
    }

    pub fn index_cap(&self) -> u64 {
        self.index_cap
    }

    pub fn fip(&self) -> &Verdict3 {
        &self.fip
    }

    pub fn source(&self) -> &NatSet {
        match &self.kind {
            ChainKind::TailsOf(s) | ChainKind::ShiftsDown(s) => s,
        }
    }

    /// `G_n`.
    pub fn member_at(&self, n: u64) -> NatSet {
        match &self.kind {
            ChainKind::TailsOf(s) => s.tail(n),
            ChainKind::ShiftsDown(s) => {
                // decidable chains stop changing once every shift class has appeared
                let n = match s.as_periodic() {
                    Some(p) => n.min(p.threshold() + p.period()),
                    None => n,
                };
                (1..=n).fold(s.clone(), |acc, k| acc.intersect(&s.shift_left(k)))
            }
        }
    }

    /// Indices worth trying, ascending, and whether they exhaust the chain up to
    /// fe-equivalence (true only for decidable sources).
    pub(crate) fn candidate_indices(&self, horizon: u64) -> (Vec<u64>, bool) {
        let s = self.source();
        match (&self.kind, s.as_periodic()) {
            (ChainKind::TailsOf(_), Some(p)) => {
                // tails beyond the threshold are translates of one another
                let top = p.threshold() + p.period();
                let mut v = vec![0];
                v.extend(s.iter_range(0, top + 1));
                v.dedup();
                (v, true)
            }
            (ChainKind::ShiftsDown(_), Some(p)) => ((0..=p.threshold() + p.period()).collect(), true),
            (ChainKind::TailsOf(_), None) => {
                let bound = self.index_cap.min(horizon);
                let mut v = vec![0];
                v.extend(s.iter_range(1, bound.saturating_add(1)).take(4096));
                (v, false)
            }
            (ChainKind::ShiftsDown(_), None) => ((0..=self.index_cap.min(64)).collect(), false),
        }
    }
}

impl fmt::Display for ParametricBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ChainKind::TailsOf(s) => write!(f, "tails({s}, {})", self.index_cap),
            ChainKind::ShiftsDown(s) => write!(f, "shiftsdown({s}, {})", self.index_cap),
        }
    }
}

impl fmt::Display for FilterBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("base{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug)]
pub enum Base {
    Finite(FilterBase),
    Chain(ParametricBase),
}

impl Base {
    pub fn fip(&self) -> &Verdict3 {
        match self {
            Base::Finite(b) => b.fip(),
            Base::Chain(c) => c.fip(),
        }
    }

    pub(crate) fn require_fip(&self) -> Result<()> {
        if self.fip().is_false() {
            Err(Error::FipViolation(self.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn finite(generators: Vec<NatSet>, horizon: u64) -> Result<Self> {
        FilterBase::new(generators, horizon).map(Base::Finite)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Finite(b) => b.fmt(f),
            Base::Chain(c) => c.fmt(f),
        }
    }
}

/// Membership verdict with the chain index that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberVerdict {
    pub verdict: Verdict3,
    pub index: Option<u64>,
}

impl MemberVerdict {
    fn at(verdict: Verdict3, index: Option<u64>) -> Self {
        MemberVerdict { verdict, index }
    }
}

/// Finite intersection property of the base.
pub fn fip_check(base: &Base) -> Verdict3 {
    base.fip().clone()
}

/// Whether `X` belongs to the filter generated by `base`.
pub fn filter_member(base: &Base, x: &NatSet, horizon: u64) -> Result<MemberVerdict> {
    base.require_fip()?;
    match base {
        Base::Finite(b) => Ok(MemberVerdict::at(b.core().is_subset_within(x, horizon).verdict(), None)),
        Base::Chain(c) => Ok(chain_member(c, x, horizon)),
    }
}

fn chain_member(c: &ParametricBase, x: &NatSet, horizon: u64) -> MemberVerdict {
    let s = c.source();
    if let (ChainKind::TailsOf(_), Some(ss), Some(xs)) = (c.kind(), s.shape(), x.shape()) {
        use crate::natset::shape::TailInclusion;
        match ss.tail_subset_of(xs) {
            Some(TailInclusion::From(n)) => return MemberVerdict::at(Verdict3::True, Some(n)),
            Some(TailInclusion::Never { .. }) => return MemberVerdict::at(Verdict3::False, None),
            None => {}
        }
    }
    if let (ChainKind::TailsOf(_), Some(_), Some(_)) = (c.kind(), s.as_periodic(), x.as_periodic()) {
        // some tail fits iff S ∖ X is finite
        let outside = s.difference(x);
        return match outside.as_periodic().expect("decidable") {
            p if !p.is_finite() => MemberVerdict::at(Verdict3::False, None),
            p => {
                let n = match p.finite_elements().last() {
                    None => 0,
                    Some(&m) => s.iter_range(m + 1, u64::MAX).next().unwrap_or(m + 1),
                };
                MemberVerdict::at(Verdict3::True, Some(n))
            }
        };
    }
    let (candidates, exhaustive) = c.candidate_indices(horizon);
    let mut last_unknown = None;
    let mut skip_below = 0;
    for n in candidates {
        if n < skip_below {
            continue;
        }
        match c.member_at(n).is_subset_within(x, horizon) {
            Inclusion::Holds => return MemberVerdict::at(Verdict3::True, Some(n)),
            Inclusion::Fails { witness } => {
                // a tail that still contains the witness cannot fit either
                if matches!(c.kind(), ChainKind::TailsOf(_)) {
                    skip_below = witness + 1;
                }
            }
            Inclusion::Unknown { horizon } => last_unknown = Some(horizon),
        }
    }
    if exhaustive && last_unknown.is_none() && x.is_decidable() {
        return MemberVerdict::at(Verdict3::False, None);
    }
    let h = last_unknown.map_or(horizon, |h| h.bound);
    MemberVerdict::at(
        Verdict3::unknown(h, format!("no chain member below index {} fits inside X", c.index_cap().min(horizon))),
        None,
    )
}

/// `B - V ∋ x`, i.e. `B - x ∈ V`.
pub fn leftward_shift_member(b: &NatSet, base: &Base, x: u64, horizon: u64) -> Result<MemberVerdict> {
    filter_member(base, &b.shift_left(x), horizon)
}

/// Parses `base{expr, ...}`, `tails(expr[, cap])` or `shiftsdown(expr[, cap])`.
/// A chain without an explicit cap uses `default_cap`.
pub fn parse_base(text: &str, corpus: &Corpus, default_cap: u64, horizon: u64) -> Result<Base> {
    let t = text.trim();
    let syntax = |expected: &str| Error::Syntax {
        position: 0,
        expected: expected.to_string(),
    };
    let parse_set = |e: &str| crate::natset::parse_expr_with(e, corpus);
    if let Some(body) = t.strip_prefix("base{").and_then(|r| r.strip_suffix('}')) {
        let gens = split_top_level(body)
            .iter()
            .map(|e| parse_set(e))
            .collect::<Result<Vec<_>>>()?;
        return Base::finite(gens, horizon);
    }
    for (prefix, tails) in [("tails(", true), ("shiftsdown(", false)] {
        if let Some(body) = t.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
            let parts = split_top_level(body);
            let (expr, cap) = match parts.as_slice() {
                [expr] => (expr, default_cap),
                [expr, cap] => (expr, cap.trim().parse().map_err(|_| syntax("natural index cap"))?),
                _ => return Err(syntax("`expr[, cap]`")),
            };
            let s = parse_set(expr)?;
            let kind = if tails { ChainKind::TailsOf(s) } else { ChainKind::ShiftsDown(s) };
            return ParametricBase::new(kind, cap, horizon).map(Base::Chain);
        }
    }
    Err(syntax("`base{...}`, `tails(expr[, cap])` or `shiftsdown(expr[, cap])`"))
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natset::parse_expr;

    fn s(e: &str) -> NatSet {
        parse_expr(e).unwrap()
    }

    fn fb(exprs: &[&str]) -> Base {
        Base::finite(exprs.iter().map(|e| s(e)).collect(), 1 << 12).unwrap()
    }

    #[test]
    fn fip_examples() {
        assert!(fip_check(&fb(&["ap(0,2)", "ap(0,3)"])).is_true());
        assert!(fip_check(&fb(&["ap(0,2)", "ap(1,2)"])).is_false());
        let c = ParametricBase::shifts_down(s("qset"), 5, 1 << 12).unwrap();
        assert!(c.fip().is_true());
        assert_eq!(c.member_at(5).min_element_below(1 << 12), Some(64));
    }

    #[test]
    fn member_examples() {
        let evens = fb(&["ap(0,2)"]);
        assert!(filter_member(&evens, &s("N"), 100).unwrap().verdict.is_true());
        assert!(filter_member(&evens, &s("ap(0,4)"), 100).unwrap().verdict.is_false());
        let tails = Base::Chain(ParametricBase::tails(s("pow2"), 1 << 40, 1 << 12).unwrap());
        let m = filter_member(&tails, &s("qset << 3"), 100).unwrap();
        assert_eq!(m, MemberVerdict { verdict: Verdict3::True, index: Some(16) });
        assert!(matches!(
            filter_member(&fb(&["ap(0,2)", "ap(1,2)"]), &s("N"), 10),
            Err(Error::FipViolation(_))
        ));
    }

    #[test]
    fn decidable_tails() {
        let c = Base::Chain(ParametricBase::tails(s("ap(0,2)"), 100, 100).unwrap());
        let m = filter_member(&c, &s("ap(0,2) \\ {0,2,4}"), 100).unwrap();
        assert_eq!(m, MemberVerdict { verdict: Verdict3::True, index: Some(6) });
        assert!(filter_member(&c, &s("ap(0,4)"), 100).unwrap().verdict.is_false());
        assert!(ParametricBase::tails(s("{1,2}"), 5, 100).is_err());
    }

    #[test]
    fn leftward_shift_examples() {
        let evens = fb(&["ap(0,2)"]);
        assert!(leftward_shift_member(&s("ap(0,2)"), &evens, 2, 100).unwrap().verdict.is_true());
        assert!(leftward_shift_member(&s("ap(0,2)"), &evens, 1, 100).unwrap().verdict.is_false());
        let tails = Base::Chain(ParametricBase::tails(s("pow2"), 1 << 40, 1 << 12).unwrap());
        for k in 0..=32 {
            let m = leftward_shift_member(&s("qset"), &tails, k, 100).unwrap();
            assert!(m.verdict.is_true(), "k={k}");
            assert_eq!(m.index, Some(1 << (k + 1)));
        }
    }

    #[test]
    fn parse_bases() {
        let c = Corpus::builtin();
        assert!(matches!(parse_base("base{ap(0,2), {0,2,4}}", &c, 9, 100).unwrap(), Base::Finite(_)));
        assert!(matches!(parse_base("tails(pow2, 64)", &c, 9, 100).unwrap(), Base::Chain(_)));
        assert!(matches!(parse_base("shiftsdown(qset, 3)", &c, 9, 100).unwrap(), Base::Chain(_)));
        match parse_base("tails(pow2)", &c, 9, 100).unwrap() {
            Base::Chain(p) => assert_eq!(p.index_cap(), 9),
            Base::Finite(_) => panic!("expected a chain"),
        }
        assert!(parse_base("tails(pow2, 1, 2)", &c, 9, 100).is_err());
        assert!(parse_base("whatever", &c, 9, 100).is_err());
    }
}
