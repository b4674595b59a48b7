//! Exponential block sets `{2^m + offset + j : m >= min_exp, 0 <= j < slope*m + intercept} ∩ [lo, ∞)`.
//!
//! Powers of two and the thick density-zero set `{2^m + k : k < m}` both have
//! this shape, and so do all their shifts and tails. For large `m` the blocks
//! are isolated from each other, which makes inclusion between two shapes
//! decidable: compare block `m` with block `m` once every affine quantity has
//! a stable sign, and brute-force the finitely many elements below that.

use super::Periodic;
use std::cmp::max;

/// Largest exponent handled; keeps `2^m` plus offsets inside `u64`/`i128` comfortably.
pub const MAX_EXP: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockShape {
    pub offset: i64,
    pub slope: u64,
    pub intercept: i64,
    pub min_exp: u32,
    pub lo: u64,
}

/// Outcome of comparing two shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeInclusion {
    Holds,
    Fails { witness: u64 },
}

/// Whether some tail of `S` lies inside `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailInclusion {
    /// `S ∖ [0, n) ⊆ X`, with `n = 0` or `n ∈ S` the least such start.
    From(u64),
    /// Infinitely many elements of `S` lie outside `X`; `witness` is one of them.
    Never { witness: u64 },
}

impl BlockShape {
    pub fn powers_of_two() -> Self {
        BlockShape {
            offset: 0,
            slope: 0,
            intercept: 1,
            min_exp: 0,
            lo: 0,
        }
    }

    /// `{2^m + k : k < m}`.
    pub fn q_set() -> Self {
        BlockShape {
            offset: 0,
            slope: 1,
            intercept: 0,
            min_exp: 0,
            lo: 0,
        }
    }

    pub fn block_len(&self, m: u32) -> i128 {
        self.slope as i128 * m as i128 + self.intercept as i128
    }

    fn block_start(&self, m: u32) -> i128 {
        (1i128 << m) + self.offset as i128
    }

    pub fn member(&self, x: u64) -> bool {
        if x < self.lo {
            return false;
        }
        let x = x as i128;
        (self.min_exp..=MAX_EXP).any(|m| {
            let s = self.block_start(m);
            s <= x && x < s + self.block_len(m)
        })
    }

    pub fn shift_right(&self, k: u64) -> Self {
        BlockShape {
            offset: self.offset + k as i64,
            lo: self.lo + k,
            ..*self
        }
    }

    pub fn shift_left(&self, k: u64) -> Self {
        BlockShape {
            offset: self.offset - k as i64,
            lo: self.lo.saturating_sub(k),
            ..*self
        }
    }

    pub fn tail(&self, n: u64) -> Self {
        BlockShape {
            lo: max(self.lo, n),
            ..*self
        }
    }

    /// Ascending elements in `[lo, hi)`.
    pub fn iter_range(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        let floor = max(lo, self.lo) as i128;
        let hi = hi as i128;
        let mut next_min = floor;
        (self.min_exp..=MAX_EXP)
            .take_while(move |&m| self.block_start(m) < hi)
            .flat_map(move |m| {
                let s = self.block_start(m);
                let e = (s + self.block_len(m)).min(hi);
                let from = s.max(next_min).max(0);
                if e > from {
                    next_min = e;
                }
                (from..e).map(|x| x as u64)
            })
    }

    /// Exponent from which blocks of both shapes are isolated, sign-stable and above both cutoffs.
    fn clean_exponent(&self, other: &BlockShape, extra: &[i128]) -> Option<u32> {
        let a = max(self.offset.unsigned_abs(), other.offset.unsigned_abs()) as i128;
        let mut stab = max(self.intercept.unsigned_abs(), other.intercept.unsigned_abs()) as i128;
        for e in extra {
            stab = max(stab, e.abs());
        }
        let max_slope = max(self.slope, other.slope) as i128;
        let floor = max(self.lo, other.lo) as i128;
        let start = max(max(self.min_exp, other.min_exp), 2);
        (start..=MAX_EXP).find(|&m| {
            let half = 1i128 << (m - 1);
            let len = max(max(self.block_len(m), other.block_len(m)), 0);
            m as i128 > stab
                && half >= max_slope
                && 2 * a + len < half
                && (1i128 << m) - a >= floor
        })
    }

    /// Decides `self ⊆ other`. `None` when the clean regime starts beyond `MAX_EXP`.
    pub fn subset_of(&self, other: &BlockShape) -> Option<ShapeInclusion> {
        let (ox, oy) = (self.offset as i128, other.offset as i128);
        let d_icpt = oy + other.intercept as i128 - ox - self.intercept as i128;
        let m0 = self.clean_exponent(other, &[d_icpt])?;
        if let Some(w) = self.eventual_failure(other, m0) {
            return Some(ShapeInclusion::Fails { witness: w });
        }
        let a = max(self.offset.unsigned_abs(), other.offset.unsigned_abs()) as i128;
        let low = ((1i128 << m0) - a).max(0) as u64;
        for x in self.iter_range(0, low) {
            if !other.member(x) {
                return Some(ShapeInclusion::Fails { witness: x });
            }
        }
        Some(ShapeInclusion::Holds)
    }

    /// Block `m0` comparison; the answer is the same for every `m >= m0`.
    fn eventual_failure(&self, other: &BlockShape, m0: u32) -> Option<u64> {
        let (ox, oy) = (self.offset as i128, other.offset as i128);
        let lx = self.block_len(m0);
        if lx <= 0 {
            return None;
        }
        let base = 1i128 << m0;
        if oy > ox {
            return Some((base + ox) as u64);
        }
        let y_end = oy + other.block_len(m0).max(0);
        if ox + lx > y_end {
            return Some((base + y_end.max(ox)) as u64);
        }
        None
    }

    /// Least tail of `self` contained in `other`, if any.
    pub fn tail_subset_of(&self, other: &BlockShape) -> Option<TailInclusion> {
        let untailed = BlockShape { lo: 0, ..*self };
        let (ox, oy) = (self.offset as i128, other.offset as i128);
        let d_icpt = oy + other.intercept as i128 - ox - self.intercept as i128;
        let m0 = untailed.clean_exponent(other, &[d_icpt])?;
        if untailed.eventual_failure(other, m0).is_some() {
            // the failure recurs in every block from m0 on; report one inside the tail
            let m = (m0..=MAX_EXP).find(|&m| (1i128 << m) + ox >= self.lo as i128)?;
            let w = untailed.eventual_failure(other, m)?;
            return Some(TailInclusion::Never { witness: w });
        }
        let a = max(self.offset.unsigned_abs(), other.offset.unsigned_abs()) as i128;
        let low = ((1i128 << m0) - a).max(0) as u64;
        let last_bad = self.iter_range(0, low).filter(|&x| !other.member(x)).last();
        Some(match last_bad {
            None => TailInclusion::From(0),
            Some(b) => TailInclusion::From(
                self.iter_range(b + 1, u64::MAX)
                    .next()
                    .expect("shape with an infinite tail"),
            ),
        })
    }

    /// Whether for every `k >= 0` some tail of `self` lies in `other - k`.
    pub fn tails_inside_all_left_shifts(&self, other: &BlockShape) -> bool {
        let eventually_empty = self.slope == 0 && self.intercept <= 0;
        eventually_empty || (other.offset <= self.offset && other.slope > self.slope)
    }

    /// Whether the shape has infinitely many elements.
    /// Decides `self ⊆ b` for eventually periodic `b`. Growing blocks eventually
    /// cover every residue mod `p_b`; blocks of fixed length start at `2^m`, whose
    /// residues mod `p_b` repeat with period at most `p_b`.
    pub fn subset_of_periodic(&self, b: &Periodic) -> Option<ShapeInclusion> {
        let (t, p) = (b.threshold() as i128, b.period() as i128);
        let floor = max(t, self.lo as i128);
        let first_miss = |m: u32| {
            let s = self.block_start(m).max(self.lo as i128).max(0);
            let e = self.block_start(m) + self.block_len(m);
            (s..e).map(|x| x as u64).find(|&x| !b.member(x))
        };
        if self.slope > 0 {
            for m in self.min_exp..=MAX_EXP {
                if let Some(w) = first_miss(m) {
                    return Some(ShapeInclusion::Fails { witness: w });
                }
                if self.block_start(m) >= floor && self.block_len(m) >= p {
                    // a full period inside B, so the mask has no holes
                    return Some(ShapeInclusion::Holds);
                }
            }
            return None;
        }
        let len = self.block_len(0);
        if len <= 0 {
            return Some(ShapeInclusion::Holds);
        }
        let m1 = (self.min_exp..=MAX_EXP).find(|&m| self.block_start(m) >= floor && (1i128 << m) >= p)?;
        if let Some(w) = (self.min_exp..m1).find_map(first_miss) {
            return Some(ShapeInclusion::Fails { witness: w });
        }
        let mut pw = (0..m1).fold(1 % p, |acc, _| acc * 2 % p);
        for m in m1..=m1 + p as u32 {
            for j in 0..len.min(p) {
                let r = (pw + self.offset as i128 + j - t).rem_euclid(p);
                if !b.member((t + r) as u64) {
                    if m > 62 {
                        return None;
                    }
                    let w = u64::try_from(self.block_start(m) + j).ok()?;
                    return Some(ShapeInclusion::Fails { witness: w });
                }
            }
            pw = pw * 2 % p;
        }
        Some(ShapeInclusion::Holds)
    }

    pub fn is_infinite(&self) -> bool {
        self.slope > 0 || self.intercept > 0
    }
}
