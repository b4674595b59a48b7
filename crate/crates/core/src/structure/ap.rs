use crate::bits::Bits;
use crate::natset::{FiniteSet, NatSet, Window};
use crate::verdict::Verdict3;

/// A `k`-term progression `a, a+d, …, a+(k-1)d` inside `S` ending below `horizon`.
///
/// Returns the one with least `d >= 1`, then least `a`. For each `d` the
/// candidate starts are the AND of the membership window with itself shifted
/// by `d, 2d, …`.
pub fn find_ap(s: &NatSet, k: u64, horizon: u64) -> Option<(u64, u64)> {
    if k == 0 || horizon == 0 {
        return None;
    }
    let w = s.window(0, horizon);
    if k == 1 {
        return w.bits.first_one().map(|a| (a as u64, 1));
    }
    let span_max = horizon - 1;
    let max_d = span_max / (k - 1);
    for d in 1..=max_d {
        let len = (horizon - (k - 1) * d) as usize;
        let mut cand = Bits::ones(len);
        for i in 0..k {
            cand.and_shifted(&w.bits, (i * d) as usize);
            if !cand.any() {
                break;
            }
        }
        if let Some(a) = cand.first_one() {
            return Some((a as u64, d));
        }
    }
    None
}

/// Whether `d ∈ S - S`, i.e. some `x` has `x, x + d ∈ S`.
///
/// Exact on the decidable tier; otherwise searched with `x < horizon`.
pub fn diff_member(s: &NatSet, d: u64, horizon: u64) -> Verdict3 {
    if s.is_decidable() {
        return Verdict3::from_bool(s.intersect(&s.shift_left(d)).is_empty_exact() == Some(false));
    }
    if s.iter_range(0, horizon).any(|x| s.member(x + d)) {
        Verdict3::True
    } else {
        Verdict3::unknown(horizon, format!("no pair x, x+{d} with x below the horizon"))
    }
}

/// All `d < horizon` in `S - S`. Exact for decidable sets; for generators
/// only pairs with both elements below `2·horizon` are considered.
pub fn difference_window(s: &NatSet, horizon: u64) -> Window {
    let mut bits = Bits::zeros(horizon as usize);
    if s.is_decidable() {
        for d in 0..horizon {
            if diff_member(s, d, horizon).is_true() {
                bits.set(d as usize, true);
            }
        }
    } else {
        let bound = horizon.saturating_mul(2);
        let w = s.window(0, bound);
        for d in 0..horizon {
            let mut cand = w.bits.clone();
            cand.and_shifted(&w.bits, d as usize);
            if cand.any() {
                bits.set(d as usize, true);
            }
        }
    }
    Window {
        lo: 0,
        hi: horizon,
        bits,
    }
}

/// `⋂_{t ∈ G} (S - t)`; the empty family gives ℕ.
pub fn shifted_intersection(s: &NatSet, g: &FiniteSet) -> NatSet {
    g.elements()
        .iter()
        .fold(NatSet::naturals(), |acc, &t| acc.intersect(&s.shift_left(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natset::parse_expr;
    use crate::testutil::arb_periodic;
    use proptest::prelude::*;

    fn brute_ap(s: &NatSet, k: u64, horizon: u64) -> Option<(u64, u64)> {
        for d in 1..=horizon {
            for a in 0..horizon {
                let last = a + (k - 1) * d;
                if last >= horizon {
                    break;
                }
                if (0..k).all(|i| s.member(a + i * d)) {
                    return Some((a, d));
                }
            }
        }
        None
    }

    #[test]
    fn ap_examples() {
        assert_eq!(find_ap(&NatSet::ap(0, 2), 5, 100), Some((0, 2)));
        let p = NatSet::powers_of_two();
        assert_eq!(find_ap(&p, 3, 1 << 10), brute_ap(&p, 3, 1 << 10));
        assert_eq!(find_ap(&p, 3, 1 << 10), None);
        assert_eq!(find_ap(&NatSet::q_set(), 5, 64), Some((32, 1)));
        assert_eq!(find_ap(&NatSet::q_set(), 5, 64), brute_ap(&NatSet::q_set(), 5, 64));
    }

    #[test]
    fn diff_examples() {
        let evens = NatSet::ap(0, 2);
        assert!(diff_member(&evens, 2, 10).is_true());
        assert!(diff_member(&evens, 3, 10).is_false());
        assert!(diff_member(&NatSet::ap(0, 6), 12, 10).is_true());
        assert!(diff_member(&NatSet::q_set(), 1, 10).is_true());
        assert!(diff_member(&NatSet::empty(), 0, 10).is_false());
        assert!(diff_member(&NatSet::finite([4]), 0, 10).is_true());
        let w = difference_window(&NatSet::finite([1, 4, 6]), 8);
        assert_eq!(w.elements().collect::<Vec<_>>(), vec![0, 2, 3, 5]);
    }

    #[test]
    fn shifted_intersection_examples() {
        let evens = NatSet::ap(0, 2);
        let g = |v: &[u64]| FiniteSet::new(v.to_vec());
        assert_eq!(shifted_intersection(&evens, &g(&[0, 2])), evens);
        assert_eq!(shifted_intersection(&evens, &g(&[0, 1])), NatSet::empty());
        let s = parse_expr("per(;110)").unwrap();
        let si = shifted_intersection(&s, &g(&[0, 1]));
        for x in 0..60 {
            assert_eq!(si.member(x), s.member(x) && s.member(x + 1));
        }
    }

    proptest! {
        #[test]
        fn find_ap_matches_exhaustive(p in arb_periodic(10, 8), k in 1u64..5, h in 1u64..60) {
            let s: NatSet = p.into();
            prop_assert_eq!(find_ap(&s, k, h), brute_ap(&s, k, h));
        }

        #[test]
        fn diff_member_matches_pairs(p in arb_periodic(10, 8), d in 0u64..30) {
            let s: NatSet = p.clone().into();
            let bound = p.threshold() + 2 * p.period() + d;
            let brute = (0..bound).any(|x| s.member(x) && s.member(x + d));
            prop_assert_eq!(diff_member(&s, d, 10).is_true(), brute);
        }
    }
}
