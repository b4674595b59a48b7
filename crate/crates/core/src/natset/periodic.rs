use crate::bits::Bits;
use num_integer::Integer;

/// An eventually periodic subset of ℕ in canonical form.
///
/// `x < threshold` reads the transient; `x >= threshold` reads
/// `mask[(x - threshold) % period]`. Construction always normalizes, so the
/// period is minimal and the threshold is the least one for that period.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Periodic {
    transient: Bits,
    mask: Bits,
}

impl Periodic {
    /// Panics if `mask` is empty.
    pub fn new(transient: Bits, mask: Bits) -> Self {
        assert!(!mask.is_empty(), "period mask must be non-empty");
        let (transient, mask) = normalize(transient, mask);
        Periodic { transient, mask }
    }

    pub fn naturals() -> Self {
        Periodic::new(Bits::default(), Bits::ones(1))
    }

    /// `{a, a+d, a+2d, ...}` for `d >= 1`.
    pub fn arithmetic(a: u64, d: u64) -> Self {
        assert!(d >= 1);
        let mut mask = Bits::zeros(d as usize);
        mask.set(0, true);
        Periodic::new(Bits::zeros(a as usize), mask)
    }

    pub fn from_finite(elements: &[u64]) -> Self {
        let t = elements.last().map_or(0, |&m| m as usize + 1);
        let mut tr = Bits::zeros(t);
        for &e in elements {
            tr.set(e as usize, true);
        }
        Periodic::new(tr, Bits::zeros(1))
    }

    /// Builds from a membership function sampled on `[0, threshold + period)`.
    pub fn from_fn(threshold: usize, period: usize, f: impl Fn(u64) -> bool) -> Self {
        let tr = Bits::from_bools((0..threshold).map(|x| f(x as u64)));
        let mask = Bits::from_bools((threshold..threshold + period).map(|x| f(x as u64)));
        Periodic::new(tr, mask)
    }

    pub fn threshold(&self) -> u64 {
        self.transient.len() as u64
    }

    pub fn period(&self) -> u64 {
        self.mask.len() as u64
    }

    pub fn transient(&self) -> &Bits {
        &self.transient
    }

    pub fn mask(&self) -> &Bits {
        &self.mask
    }

    #[inline]
    pub fn member(&self, x: u64) -> bool {
        let t = self.threshold();
        if x < t {
            self.transient.get(x as usize)
        } else {
            self.mask.get(((x - t) % self.period()) as usize)
        }
    }

    /// True when the tail mask is empty, i.e. the set is finite.
    pub fn is_finite(&self) -> bool {
        !self.mask.any()
    }

    /// True when the tail mask is all ones, i.e. the set is cofinite.
    pub fn is_cofinite(&self) -> bool {
        self.mask.all()
    }

    pub fn tail_ones(&self) -> u64 {
        self.mask.count_ones() as u64
    }

    pub fn is_empty(&self) -> bool {
        !self.transient.any() && !self.mask.any()
    }

    pub fn min_element(&self) -> Option<u64> {
        self.transient
            .first_one()
            .map(|i| i as u64)
            .or_else(|| self.mask.first_one().map(|i| self.threshold() + i as u64))
    }

    /// Finite elements, valid only when `is_finite`.
    pub fn finite_elements(&self) -> Vec<u64> {
        debug_assert!(self.is_finite());
        self.transient.iter_ones().map(|i| i as u64).collect()
    }

    /// Combines two sets pointwise over a common threshold and lcm period.
    pub fn zip_with(&self, other: &Periodic, f: impl Fn(bool, bool) -> bool) -> Periodic {
        let t = self.threshold().max(other.threshold()) as usize;
        let p = self.period().lcm(&other.period()) as usize;
        Periodic::from_fn(t, p, |x| f(self.member(x), other.member(x)))
    }

    pub fn map(&self, f: impl Fn(bool) -> bool) -> Periodic {
        Periodic::new(
            Bits::from_bools(self.transient.iter().map(&f)),
            Bits::from_bools(self.mask.iter().map(&f)),
        )
    }

    /// `S + k`.
    pub fn shift_right(&self, k: u64) -> Periodic {
        let mut tr = Bits::zeros(k as usize);
        for b in self.transient.iter() {
            tr.push(b);
        }
        Periodic::new(tr, self.mask.clone())
    }

    /// `S - k = {x : x + k ∈ S}`.
    pub fn shift_left(&self, k: u64) -> Periodic {
        let t = self.threshold();
        if k <= t {
            let tr = Bits::from_bools(self.transient.iter().skip(k as usize));
            Periodic::new(tr, self.mask.clone())
        } else {
            let p = self.period();
            let r = ((k - t) % p) as usize;
            let mask = Bits::from_bools((0..p as usize).map(|i| self.mask.get((i + r) % p as usize)));
            Periodic::new(Bits::default(), mask)
        }
    }

    /// The shift index in `[0, t + p)` with `S - k = S - canonical_shift(k)`.
    pub fn canonical_shift(&self, k: u64) -> u64 {
        let t = self.threshold();
        if k < t {
            k
        } else {
            t + (k - t) % self.period()
        }
    }

    pub fn iter_range(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        let finite_end = if self.is_finite() {
            hi.min(self.threshold())
        } else {
            hi
        };
        (lo..finite_end).filter(move |&x| self.member(x))
    }
}

impl std::fmt::Debug for Periodic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "per({};{})", self.transient, self.mask)
    }
}

/// Reduces to the minimal period, then pulls the threshold down while the
/// last transient bit agrees with the periodic continuation.
pub fn normalize(mut transient: Bits, mask: Bits) -> (Bits, Bits) {
    let p = mask.len();
    let period = (1..=p)
        .filter(|d| p.is_multiple_of(*d))
        .find(|&d| (0..p).all(|i| mask.get(i) == mask.get((i + d) % p)))
        .unwrap_or(p);
    let mut mask = Bits::from_bools((0..period).map(|i| mask.get(i)));
    while !transient.is_empty() && transient.get(transient.len() - 1) == mask.get(period - 1) {
        let last = mask.get(period - 1);
        let rotated = Bits::from_bools(std::iter::once(last).chain((0..period - 1).map(|i| mask.get(i))));
        mask = rotated;
        let t = transient.len() - 1;
        transient.truncate(t);
    }
    (transient, mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> Bits {
        Bits::from_str01(s).unwrap()
    }

    #[test]
    fn minimal_period() {
        let p = Periodic::new(Bits::default(), bits("1010"));
        assert_eq!(p.period(), 2);
        assert_eq!(p.mask().to_string(), "10");
    }

    #[test]
    fn minimal_threshold() {
        let p = Periodic::new(bits("1"), bits("1"));
        assert_eq!(p.threshold(), 0);
        assert_eq!(p.period(), 1);
        assert!(p.is_cofinite());
    }

    #[test]
    fn shifts() {
        let evens = Periodic::arithmetic(0, 2);
        assert_eq!(evens.shift_left(1), Periodic::arithmetic(1, 2));
        assert_eq!(evens.shift_right(1).shift_left(1), evens);
        let f = Periodic::from_finite(&[0, 1]).shift_right(3);
        assert_eq!(f.finite_elements(), vec![3, 4]);
    }

    // Brute-force minimal period of a cyclic word, independent of `normalize`.
    fn brute_min_period(w: &[bool]) -> usize {
        let p = w.len();
        for d in 1..=p {
            if p.is_multiple_of(d) && (0..p).all(|i| w[i] == w[(i + d) % p]) {
                return d;
            }
        }
        p
    }

    proptest! {
        #[test]
        fn period_matches_brute_force(w in prop::collection::vec(any::<bool>(), 1..=64)) {
            let p = Periodic::new(Bits::default(), Bits::from_bools(w.iter().copied()));
            prop_assert_eq!(p.period() as usize, brute_min_period(&w));
        }

        #[test]
        fn normalize_preserves_membership(
            t in prop::collection::vec(any::<bool>(), 0..20),
            m in prop::collection::vec(any::<bool>(), 1..13),
        ) {
            let raw_t = t.len() as u64;
            let raw_p = m.len() as u64;
            let raw = |x: u64| if x < raw_t { t[x as usize] } else { m[((x - raw_t) % raw_p) as usize] };
            let p = Periodic::new(Bits::from_bools(t.iter().copied()), Bits::from_bools(m.iter().copied()));
            for x in 0..raw_t + 4 * raw_p {
                prop_assert_eq!(p.member(x), raw(x));
            }
            prop_assert!(p.threshold() <= raw_t);
        }
    }
}
