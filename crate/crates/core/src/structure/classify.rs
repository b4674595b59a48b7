use crate::natset::{NatSet, Periodic, Window};
use crate::verdict::Verdict3;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub thick: Verdict3,
    pub syndetic: Verdict3,
    pub piecewise_syndetic: Verdict3,
    pub max_run_seen: u64,
    pub max_gap_seen: u64,
    pub horizon: u64,
}

/// Longest run of consecutive members and longest run of non-members in a window.
/// The gap count ignores the stretch before the first member.
pub fn runs_and_gaps(w: &Window) -> (u64, u64) {
    let (mut run, mut gap, mut best_run, mut best_gap) = (0u64, 0u64, 0u64, 0u64);
    let mut seen = false;
    for b in w.bits.iter() {
        if b {
            run += 1;
            gap = 0;
            seen = true;
            best_run = best_run.max(run);
        } else {
            run = 0;
            if seen {
                gap += 1;
                best_gap = best_gap.max(gap);
            }
        }
    }
    (best_run, best_gap)
}

/// Longest interval inside an eventually periodic set; `None` when it is cofinite.
pub fn max_run(p: &Periodic) -> Option<u64> {
    if p.is_cofinite() {
        return None;
    }
    let s: NatSet = p.clone().into();
    let w = s.window(0, p.threshold() + 2 * p.period() + 1);
    Some(runs_and_gaps(&w).0)
}

pub fn is_thick(s: &NatSet, horizon: u64) -> Verdict3 {
    match s.as_periodic() {
        Some(p) => Verdict3::from_bool(p.is_cofinite()),
        None => {
            let (run, _) = runs_and_gaps(&s.window(0, horizon));
            Verdict3::unknown(horizon, format!("longest run below the horizon: {run}"))
        }
    }
}

pub fn is_syndetic(s: &NatSet, horizon: u64) -> Verdict3 {
    match s.as_periodic() {
        Some(p) => Verdict3::from_bool(!p.is_finite()),
        None => {
            let (_, gap) = runs_and_gaps(&s.window(0, horizon));
            Verdict3::unknown(horizon, format!("longest gap below the horizon: {gap}"))
        }
    }
}

/// Eventually periodic sets are piecewise syndetic exactly when they are
/// infinite. For generators, reports the longest stretch below `horizon`
/// whose gaps stay within `gap_bound`.
pub fn is_piecewise_syndetic(s: &NatSet, gap_bound: u64, horizon: u64) -> Verdict3 {
    match s.as_periodic() {
        Some(p) => Verdict3::from_bool(!p.is_finite()),
        None => {
            let stretch = longest_bounded_gap_stretch(&s.window(0, horizon), gap_bound);
            Verdict3::unknown(
                horizon,
                format!("longest stretch with gaps <= {gap_bound} below the horizon: {stretch}"),
            )
        }
    }
}

fn longest_bounded_gap_stretch(w: &Window, gap_bound: u64) -> u64 {
    let mut best = 0;
    let mut start: Option<u64> = None;
    let mut last: Option<u64> = None;
    for x in w.elements() {
        match (start, last) {
            (Some(s), Some(l)) if x - l - 1 <= gap_bound => {
                best = best.max(x - s + 1);
            }
            _ => {
                start = Some(x);
                best = best.max(1);
            }
        }
        last = Some(x);
    }
    best
}

pub fn classify(s: &NatSet, gap_bound: u64, horizon: u64) -> StructureReport {
    let (max_run_seen, max_gap_seen) = runs_and_gaps(&s.window(0, horizon));
    StructureReport {
        thick: is_thick(s, horizon),
        syndetic: is_syndetic(s, horizon),
        piecewise_syndetic: is_piecewise_syndetic(s, gap_bound, horizon),
        max_run_seen,
        max_gap_seen,
        horizon,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natset::parse_expr;

    #[test]
    fn examples() {
        assert!(is_thick(&NatSet::naturals(), 10).is_true());
        let evens = NatSet::ap(0, 2);
        let r = classify(&evens, 1, 100);
        assert!(r.thick.is_false() && r.syndetic.is_true() && r.piecewise_syndetic.is_true());
        assert_eq!(r.max_run_seen, 1);
        assert_eq!(max_run(evens.as_periodic().as_ref().unwrap()), Some(1));
        let fin = classify(&NatSet::finite([1, 2, 3]), 1, 100);
        assert!(fin.syndetic.is_false() && fin.piecewise_syndetic.is_false());
    }

    #[test]
    fn q_is_unknown_with_long_runs() {
        let r = classify(&NatSet::q_set(), 4, 1 << 21);
        assert!(r.thick.is_unknown() && r.syndetic.is_unknown() && r.piecewise_syndetic.is_unknown());
        assert!(r.max_run_seen >= 20);
    }

    #[test]
    fn max_run_spans_transient_and_tail() {
        let p = parse_expr("per(0111;1100)").unwrap().as_periodic().unwrap();
        // 1,2,3 then 4,5 from the tail
        assert_eq!(max_run(&p), Some(5));
    }
}
