use crate::bits::Bits;
use crate::natset::{FiniteSet, NatSet};

/// All `k ∈ [k_lo, k_hi)` with `F + k ⊆ B`, ascending.
///
/// `B` is materialized once over `[k_lo, k_hi + max F)`; the candidate set is
/// a bit vector over `[k_lo, k_hi)` that is AND-ed with the window read at
/// offset `f` for each `f ∈ F`, one machine word at a time.
pub fn translate_witnesses(f: &FiniteSet, b: &NatSet, k_lo: u64, k_hi: u64) -> Vec<u64> {
    candidate_bits(f, b, k_lo, k_hi)
        .iter_ones()
        .map(|i| k_lo + i as u64)
        .collect()
}

/// Least witness in `[k_lo, k_hi)`, scanning in growing chunks.
pub fn least_witness(f: &FiniteSet, b: &NatSet, k_lo: u64, k_hi: u64) -> Option<u64> {
    let mut lo = k_lo;
    let mut chunk = 1u64 << 12;
    while lo < k_hi {
        let hi = lo.saturating_add(chunk).min(k_hi);
        if let Some(i) = candidate_bits(f, b, lo, hi).first_one() {
            return Some(lo + i as u64);
        }
        lo = hi;
        chunk = (chunk * 2).min(1 << 20);
    }
    None
}

fn candidate_bits(f: &FiniteSet, b: &NatSet, k_lo: u64, k_hi: u64) -> Bits {
    if k_hi <= k_lo {
        return Bits::zeros(0);
    }
    let len = (k_hi - k_lo) as usize;
    let mut cand = Bits::ones(len);
    let Some(span) = f.max() else {
        return cand;
    };
    let window = b.window(k_lo, k_hi + span);
    for &x in f.elements() {
        cand.and_shifted(&window.bits, x as usize);
        if !cand.any() {
            break;
        }
    }
    cand
}

/// `{k < horizon : F + k ⊆ B}`.
pub fn witness_set(f: &FiniteSet, b: &NatSet, horizon: u64) -> NatSet {
    NatSet::finite(translate_witnesses(f, b, 0, horizon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natset::parse_expr;

    fn fs(v: &[u64]) -> FiniteSet {
        FiniteSet::new(v.to_vec())
    }

    // Per-element probing; the reference the word-parallel scan must match.
    fn brute(f: &FiniteSet, b: &NatSet, lo: u64, hi: u64) -> Vec<u64> {
        (lo..hi)
            .filter(|&k| f.elements().iter().all(|&x| b.member(x + k)))
            .collect()
    }

    #[test]
    fn examples() {
        let evens = NatSet::ap(0, 2);
        assert_eq!(translate_witnesses(&fs(&[0, 2]), &evens, 0, 10), vec![0, 2, 4, 6, 8]);
        assert!(translate_witnesses(&fs(&[0, 1]), &evens, 0, 100).is_empty());
        let b = parse_expr("per(;100100)").unwrap();
        assert_eq!(translate_witnesses(&fs(&[0, 3]), &b, 0, 12), brute(&fs(&[0, 3]), &b, 0, 12));
        assert_eq!(translate_witnesses(&fs(&[0, 3]), &b, 0, 12), vec![0, 3, 6, 9]);
    }

    #[test]
    fn witness_set_examples() {
        let evens = NatSet::ap(0, 2);
        assert_eq!(witness_set(&fs(&[2]), &evens, 8), NatSet::finite([0, 2, 4, 6]));
        let q = NatSet::q_set();
        let f = q.prefix(6);
        assert_eq!(f.elements(), &[2, 4, 5]);
        let w = witness_set(&f, &q, 40);
        assert!(w.member(0));
        assert!(w.as_finite().unwrap().len() >= 2);
        assert_eq!(w.as_finite().unwrap().elements(), brute(&f, &q, 0, 40).as_slice());
        assert!(witness_set(&fs(&[0, 1, 2]), &evens, 500).as_finite().unwrap().is_empty());
    }

    #[test]
    fn matches_brute_force_on_q() {
        let q = NatSet::q_set();
        for f in [vec![0], vec![0, 1, 2], vec![0, 4], vec![1, 3, 7, 8]] {
            let f = fs(&f);
            assert_eq!(translate_witnesses(&f, &q, 3, 2000), brute(&f, &q, 3, 2000));
        }
        assert_eq!(least_witness(&fs(&[0, 1, 2, 3, 4]), &q, 0, 1 << 12), Some(32));
        assert_eq!(translate_witnesses(&FiniteSet::default(), &q, 5, 8), vec![5, 6, 7]);
    }
}
