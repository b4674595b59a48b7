//! Filters on ℕ given by a base, and the order `U ≤fe V` between them.
//!
//! A base is either finitely many generators or a descending chain
//! `G_0 ⊇ G_1 ⊇ …`. Every query reduces to subset and embedding tests on
//! members of the base; verdicts combine pessimistically, so an `Unknown`
//! anywhere on the path to an answer makes the answer `Unknown`.

mod base;

pub use base::{
    filter_member, fip_check, leftward_shift_member, parse_base, Base, ChainKind, FilterBase,
    MemberVerdict, ParametricBase,
};

use crate::embed::{fe_bounded, fe_decide, includes_translate, FeCertificate, FeVerdict};
use crate::error::{Error, Result};
use crate::natset::{NatSet, Periodic};
use crate::verdict::Verdict3;
use serde::Serialize;

/// Members of the base worth testing, with their chain index, and whether the
/// list covers the whole base up to fe-equivalence.
fn members(base: &Base, horizon: u64) -> (Vec<(Option<u64>, NatSet)>, bool) {
    match base {
        Base::Finite(b) => (vec![(None, b.core().clone())], b.core().is_decidable()),
        Base::Chain(c) => {
            let (idx, exhaustive) = c.candidate_indices(horizon);
            (idx.into_iter().map(|n| (Some(n), c.member_at(n))).collect(), exhaustive)
        }
    }
}

/// `A ≤fe B` with the strongest method available for the pair.
pub fn fe_any(a: &NatSet, b: &NatSet, horizon: u64) -> FeVerdict {
    if a.is_decidable() && b.is_decidable() {
        return fe_decide(a, b).expect("decidable pair");
    }
    let t = includes_translate(a, b, horizon);
    if let (true, Some(k)) = (t.verdict.is_true(), t.k) {
        return FeVerdict::Embeds {
            certificate: FeCertificate::UniformShift { k },
        };
    }
    fe_bounded(a, b, horizon.min(256), horizon)
}

/// Prefix-by-prefix witnesses only cover finitely many `n`, so they do not settle
/// the relation.
fn fe_truth(v: &FeVerdict, horizon: u64) -> Verdict3 {
    match v {
        FeVerdict::Embeds {
            certificate: FeCertificate::PrefixWitnesses { witnesses },
        } => Verdict3::unknown(
            witnesses.last().map_or(horizon, |w| w.n),
            "every prefix tested embeds; no uniform shift found",
        ),
        other => other.verdict(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RichnessVerdict {
    pub verdict: Verdict3,
    /// Chain index of the member that embeds.
    pub index: Option<u64>,
    /// Embedding evidence for the deciding member, or for the last member tried.
    pub fe: Option<FeVerdict>,
}

/// Whether some member of the filter generated by `u` finitely embeds into `b`.
/// Supersets embed less easily, so only base members need testing.
pub fn urich_check(u: &Base, b: &NatSet, horizon: u64) -> Result<RichnessVerdict> {
    u.require_fip()?;
    let (cands, exhaustive) = members(u, horizon);
    let mut last = None;
    let mut unknown = None;
    for (index, a) in cands {
        let fe = fe_any(&a, b, horizon);
        match fe_truth(&fe, horizon) {
            Verdict3::True => {
                return Ok(RichnessVerdict {
                    verdict: Verdict3::True,
                    index,
                    fe: Some(fe),
                })
            }
            Verdict3::False => {}
            u @ Verdict3::Unknown { .. } => unknown = Some(u),
        }
        last = Some(fe);
    }
    let verdict = match unknown {
        Some(u) => u,
        None if exhaustive && b.is_decidable() => Verdict3::False,
        None => Verdict3::unknown(horizon, "no member of the base embeds below the search bounds"),
    };
    Ok(RichnessVerdict { verdict, index: None, fe: last })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterFeReport {
    pub verdict: Verdict3,
    /// Richness of `U` against each tested member of `V`'s base.
    pub checks: Vec<(Option<u64>, RichnessVerdict)>,
}

/// `U ≤fe V`: every member of `V` is `U`-rich. Richness grows with the set, so
/// the members of `V`'s base are the only sets to test.
pub fn filter_fe(u: &Base, v: &Base, horizon: u64) -> Result<FilterFeReport> {
    u.require_fip()?;
    v.require_fip()?;
    let (cands, exhaustive) = members(v, horizon);
    let mut checks = Vec::new();
    let mut verdict = Verdict3::True;
    for (index, b) in cands {
        let r = urich_check(u, &b, horizon)?;
        verdict = verdict.and(r.verdict.clone());
        let stop = r.verdict.is_false();
        checks.push((index, r));
        if stop {
            break;
        }
    }
    if verdict.is_true() && !exhaustive {
        verdict = Verdict3::unknown(horizon, "richness holds for every chain member tested");
    }
    Ok(FilterFeReport { verdict, checks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftMembership {
    pub k: u64,
    pub verdict: Verdict3,
    pub index: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumReport {
    pub verdict: Verdict3,
    /// `K = {k : X - k ∈ V}`, or its known part.
    pub k_set: String,
    pub k_exact: bool,
    pub inner: Vec<ShiftMembership>,
    /// How `K` was extended past the computed shifts.
    pub extension: String,
    pub outer: MemberVerdict,
}

/// Shifts listed in a report when `K` is settled by a uniform argument.
const LISTED_SHIFTS: u64 = 64;

/// `X ∈ U ⊕ V`, i.e. `{k : X - k ∈ V} ∈ U`.
pub fn filter_sum_member(x: &NatSet, u: &Base, v: &Base, horizon: u64) -> Result<SumReport> {
    u.require_fip()?;
    v.require_fip()?;
    let inner_at = |k: u64| -> Result<ShiftMembership> {
        let m = leftward_shift_member(x, v, k, horizon)?;
        Ok(ShiftMembership {
            k,
            verdict: m.verdict,
            index: m.index,
        })
    };

    if let Some(p) = x.as_periodic() {
        // X - k depends only on the canonical shift of k
        let (t, per) = (p.threshold(), p.period());
        let inner = (0..t + per).map(inner_at).collect::<Result<Vec<_>>>()?;
        let build = |unknown_in: bool| -> NatSet {
            Periodic::from_fn(t as usize, per as usize, |k| match &inner[k as usize].verdict {
                Verdict3::True => true,
                Verdict3::False => false,
                Verdict3::Unknown { .. } => unknown_in,
            })
            .into()
        };
        let (lo, hi) = (build(false), build(true));
        let exact = !inner.iter().any(|m| m.verdict.is_unknown());
        let outer = filter_member(u, &lo, horizon)?;
        let verdict = if exact || outer.verdict.is_true() {
            outer.verdict.clone()
        } else if filter_member(u, &hi, horizon)?.verdict.is_false() {
            Verdict3::False
        } else {
            Verdict3::unknown(horizon, "some shifts of X have undecided membership")
        };
        return Ok(SumReport {
            verdict,
            k_set: lo.to_string(),
            k_exact: exact,
            inner,
            extension: format!("X - k = X - ({t} + (k - {t}) mod {per}) for k >= {t}"),
            outer,
        });
    }

    if let (Base::Chain(c), Some(xs)) = (v, x.shape()) {
        if let ChainKind::TailsOf(s) = c.kind() {
            if let Some(ss) = s.shape() {
                if ss.tails_inside_all_left_shifts(xs) {
                    let inner = (0..horizon.min(LISTED_SHIFTS)).map(inner_at).collect::<Result<Vec<_>>>()?;
                    let k_set = NatSet::naturals();
                    let outer = filter_member(u, &k_set, horizon)?;
                    return Ok(SumReport {
                        verdict: outer.verdict.clone(),
                        k_set: k_set.to_string(),
                        k_exact: true,
                        inner,
                        extension: format!("blocks of {s} eventually lie inside every X - k"),
                        outer,
                    });
                }
            }
        }
    }

    let inner = (0..horizon).map(inner_at).collect::<Result<Vec<_>>>()?;
    let known = NatSet::finite(inner.iter().filter(|m| m.verdict.is_true()).map(|m| m.k));
    let outer = filter_member(u, &known, horizon)?;
    let verdict = if outer.verdict.is_true() {
        Verdict3::True
    } else {
        Verdict3::unknown(horizon, "K is only known below the horizon")
    };
    Ok(SumReport {
        verdict,
        k_set: known.to_string(),
        k_exact: false,
        inner,
        extension: "none".into(),
        outer,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeftSumEntry {
    pub set: String,
    pub verdict: Verdict3,
    pub index: Option<u64>,
    pub k: Option<u64>,
    /// `B - k ∈ V`, recomputed by filter membership.
    pub cross_check: Option<MemberVerdict>,
}

/// For each `B`, whether some member `A` of `V` has `A + k ⊆ B`.
pub fn left_sum_property(v: &Base, sets: &[NatSet], horizon: u64) -> Result<Vec<LeftSumEntry>> {
    v.require_fip()?;
    let (cands, exhaustive) = members(v, horizon);
    sets.iter()
        .map(|b| {
            let mut unknown = None;
            for (index, a) in &cands {
                let t = includes_translate(a, b, horizon);
                match (&t.verdict, t.k) {
                    (Verdict3::True, Some(k)) => {
                        return Ok(LeftSumEntry {
                            set: b.to_string(),
                            verdict: Verdict3::True,
                            index: *index,
                            k: Some(k),
                            cross_check: Some(leftward_shift_member(b, v, k, horizon)?),
                        })
                    }
                    (Verdict3::Unknown { .. }, _) => unknown = Some(t.verdict),
                    _ => {}
                }
            }
            let verdict = match unknown {
                Some(u) => u,
                None if exhaustive && b.is_decidable() => Verdict3::False,
                None => Verdict3::unknown(horizon, "no translate of a base member found"),
            };
            Ok(LeftSumEntry {
                set: b.to_string(),
                verdict,
                index: None,
                k: None,
                cross_check: None,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coloring {
    /// Colour `x mod modulus`.
    Residue { modulus: u64 },
    /// Colour `(x / len) mod colors`.
    Blocks { len: u64, colors: u64 },
}

impl Coloring {
    pub fn colors(&self) -> u64 {
        match *self {
            Coloring::Residue { modulus } => modulus,
            Coloring::Blocks { colors, .. } => colors,
        }
    }

    pub fn class(&self, i: u64) -> NatSet {
        match *self {
            Coloring::Residue { modulus } => NatSet::ap(i, modulus),
            Coloring::Blocks { len, colors } => {
                Periodic::from_fn(0, (len * colors) as usize, |x| (x / len) % colors == i).into()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorPiece {
    pub color: u64,
    pub set: String,
    pub rich: RichnessVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub base_rich: RichnessVerdict,
    pub pieces: Vec<ColorPiece>,
    /// True when `B` is rich but no colour class of it is.
    pub gap: Verdict3,
}

/// Splits a rich `B` by a colouring with at most four colours and tests each piece.
pub fn regularity_experiment(u: &Base, b: &NatSet, coloring: Coloring, horizon: u64) -> Result<RegularityReport> {
    if !(1..=4).contains(&coloring.colors()) || matches!(coloring, Coloring::Blocks { len: 0, .. }) {
        return Err(Error::InvalidArgument("colourings use 1 to 4 colours and non-empty blocks".into()));
    }
    let base_rich = urich_check(u, b, horizon)?;
    let pieces = (0..coloring.colors())
        .map(|i| {
            let piece = b.intersect(&coloring.class(i));
            Ok(ColorPiece {
                color: i,
                set: piece.to_string(),
                rich: urich_check(u, &piece, horizon)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let any_rich = pieces
        .iter()
        .fold(Verdict3::False, |acc, p| acc.or(p.rich.verdict.clone()));
    let gap = match any_rich {
        Verdict3::True => Verdict3::False,
        Verdict3::False => base_rich.verdict.clone(),
        u => base_rich.verdict.clone().and(u),
    };
    Ok(RegularityReport { base_rich, pieces, gap })
}
