use super::decide::includes_translate;
use super::translate::least_witness;
use crate::natset::{FiniteSet, NatSet};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessExhausted {
    pub n: u64,
    pub k_cap: u64,
}

/// `B' = ⋃_n (A ∩ n) + k_n` together with the shifts that built it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BPrimeResult {
    pub bprime: Vec<u64>,
    /// `shifts[i]` is `k_{i+1}`.
    pub shifts: Vec<u64>,
    pub n_max: u64,
    /// Set when the spaced construction stopped early.
    pub exhausted: Option<WitnessExhausted>,
    /// When the spaced construction is impossible because one shift `k` embeds
    /// all of `A`, `B' = A + k`; `bprime` then lists it below `n_max + k` and
    /// `shifts` is empty.
    pub uniform_shift: Option<u64>,
}

impl BPrimeResult {
    pub fn bprime_set(&self) -> NatSet {
        NatSet::finite(self.bprime.iter().copied())
    }
}

/// Greedy construction of `B' ⊆ B` whose leftward shifts `B' - k_n` agree
/// with `A` on `[0, n)` for every `n <= n_max`.
///
/// `k_n` is the least shift `<= k_cap` with `(A ∩ n) + k_n ⊆ B` and
/// `k_n > k_j + j` for all `j < n`. The spacing keeps each piece clear of the
/// window `[k_n, k_n + n)` of every other piece.
pub fn construct_bprime(a: &NatSet, b: &NatSet, n_max: u64, k_cap: u64) -> BPrimeResult {
    let mut shifts: Vec<u64> = Vec::new();
    let mut pieces: Vec<u64> = Vec::new();
    let mut lower = 0u64;
    let mut exhausted = None;
    for n in 1..=n_max {
        let f = a.prefix(n);
        let Some(k) = least_witness(&f, b, lower, k_cap.saturating_add(1)) else {
            exhausted = Some(WitnessExhausted { n, k_cap });
            break;
        };
        pieces.extend(f.elements().iter().map(|x| x + k));
        shifts.push(k);
        lower = lower.max(k + n + 1);
    }
    if exhausted.is_some() {
        if let Some(k) = includes_translate(a, b, k_cap).k {
            return BPrimeResult {
                bprime: a.shift_right(k).iter_range(0, n_max + k).collect(),
                shifts: Vec::new(),
                n_max,
                exhausted,
                uniform_shift: Some(k),
            };
        }
    }
    BPrimeResult {
        bprime: FiniteSet::new(pieces).elements().to_vec(),
        shifts,
        n_max,
        exhausted,
        uniform_shift: None,
    }
}

/// Independent check of the three construction invariants; returns the first violation.
pub fn verify_bprime(a: &NatSet, b: &NatSet, r: &BPrimeResult) -> Result<(), String> {
    if let Some(&x) = r.bprime.iter().find(|&&x| !b.member(x)) {
        return Err(format!("{x} ∈ B' but not in B"));
    }
    if let Some(k) = r.uniform_shift {
        if !a.shift_right(k).is_subset(b).holds() {
            return Err(format!("A + {k} is not inside B"));
        }
        let expected: Vec<u64> = a.iter_range(0, r.n_max).map(|x| x + k).collect();
        if r.bprime != expected || !r.shifts.is_empty() {
            return Err(format!("B' is not A + {k} on [0, n_max)"));
        }
        return Ok(());
    }
    for (i, &kn) in r.shifts.iter().enumerate() {
        let n = i as u64 + 1;
        for (j, &kj) in r.shifts[..i].iter().enumerate() {
            let j = j as u64 + 1;
            if kn <= kj + j {
                return Err(format!("spacing: k_{n}={kn} <= k_{j}+{j}={}", kj + j));
            }
        }
        let bprime = r.bprime_set();
        let lhs = a.window(0, n);
        let rhs = bprime.shift_left(kn).window(0, n);
        if lhs != rhs {
            return Err(format!("prefix disagreement at n={n} (k_n={kn})"));
        }
    }
    let expected = match &r.exhausted {
        Some(e) => e.n - 1,
        None => r.n_max,
    };
    if r.shifts.len() as u64 != expected {
        return Err(format!("{} shifts recorded, expected {expected}", r.shifts.len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natset::parse_expr;

    #[test]
    fn hand_simulated_greedy() {
        let r = construct_bprime(&NatSet::finite([0, 1]), &NatSet::naturals(), 3, 1 << 20);
        assert_eq!(r.shifts, vec![0, 2, 5]);
        assert_eq!(r.bprime, vec![0, 2, 3, 5, 6]);
        assert!(r.exhausted.is_none());
        verify_bprime(&NatSet::finite([0, 1]), &NatSet::naturals(), &r).unwrap();
    }

    #[test]
    fn evens_into_evens() {
        let evens = NatSet::ap(0, 2);
        let r = construct_bprime(&evens, &evens, 20, 1 << 20);
        assert!(r.shifts.iter().all(|k| k % 2 == 0));
        verify_bprime(&evens, &evens, &r).unwrap();
    }

    #[test]
    fn exhausted_at_second_prefix() {
        let r = construct_bprime(&NatSet::finite([0, 1]), &NatSet::ap(0, 2), 5, 1000);
        assert_eq!(r.exhausted, Some(WitnessExhausted { n: 2, k_cap: 1000 }));
        assert_eq!(r.shifts, vec![0]);
        verify_bprime(&NatSet::finite([0, 1]), &NatSet::ap(0, 2), &r).unwrap();
    }

    #[test]
    fn single_uniform_shift_gives_translate() {
        let (a, b) = (NatSet::finite([6, 10]), NatSet::finite([8, 12]));
        let r = construct_bprime(&a, &b, 12, 1000);
        assert_eq!(r.exhausted.as_ref().map(|e| e.n), Some(7));
        assert_eq!((r.uniform_shift, r.bprime.clone()), (Some(2), vec![8, 12]));
        verify_bprime(&a, &b, &r).unwrap();
        let mut forged = r.clone();
        forged.uniform_shift = Some(3);
        assert!(verify_bprime(&a, &b, &forged).is_err());
    }

    #[test]
    fn thick_generator_target() {
        let a = parse_expr("interval(0,6)").unwrap();
        let q = NatSet::q_set();
        let r = construct_bprime(&a, &q, 6, 1 << 12);
        assert!(r.exhausted.is_none());
        verify_bprime(&a, &q, &r).unwrap();
    }

    #[test]
    fn verifier_rejects_tampering() {
        let evens = NatSet::ap(0, 2);
        let mut r = construct_bprime(&evens, &evens, 6, 1 << 20);
        r.shifts[2] = r.shifts[1];
        assert!(verify_bprime(&evens, &evens, &r).is_err());
        let mut r = construct_bprime(&evens, &evens, 6, 1 << 20);
        r.bprime.push(1_000_001);
        assert!(verify_bprime(&evens, &evens, &r).is_err());
    }
}
