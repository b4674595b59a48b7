//! Plain word-backed bit vector used for windows, transients and period masks.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        b.clear_tail();
        b
    }

    /// `len` bits of `pattern` repeated forever, starting at bit `phase` of it.
    pub fn repeating(pattern: &Bits, phase: usize, len: usize) -> Self {
        let per = pattern.len;
        assert!(per > 0, "empty pattern");
        // long enough that every 64-bit read starting inside the first period stays in range
        let reps = 2 + 64usize.div_ceil(per);
        let ext = Bits::from_bools((0..reps).flat_map(|_| pattern.iter()));
        let step = 64 % per;
        let mut at = phase % per;
        let mut words = Vec::with_capacity(len.div_ceil(64));
        for _ in 0..len.div_ceil(64) {
            words.push(ext.word_at(at));
            at += step;
            if at >= per {
                at -= per;
            }
        }
        let mut b = Bits { words, len };
        b.clear_tail();
        b
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut b = Bits::default();
        for v in iter {
            b.push(v);
        }
        b
    }

    /// Parses a string of `0`/`1`, index 0 first.
    pub fn from_str01(s: &str) -> Option<Self> {
        let mut b = Bits::default();
        for c in s.chars() {
            match c {
                '0' => b.push(false),
                '1' => b.push(true),
                _ => return None,
            }
        }
        Some(b)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i & 63);
        if v {
            self.words[i >> 6] |= m;
        } else {
            self.words[i >> 6] &= !m;
        }
    }

    pub fn push(&mut self, v: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, v);
    }

    pub fn truncate(&mut self, len: usize) {
        if len < self.len {
            self.len = len;
            self.words.truncate(len.div_ceil(64));
            self.clear_tail();
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_ones_range(&self, lo: usize, hi: usize) -> usize {
        let mut n = 0;
        let mut i = lo;
        while i < hi {
            let take = (hi - i).min(64);
            let w = self.word_at(i);
            n += if take == 64 { w } else { w & ((1u64 << take) - 1) }.count_ones() as usize;
            i += take;
        }
        n
    }

    pub fn all(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// 64 bits starting at bit `i`; positions past the end read as zero.
    #[inline]
    pub fn word_at(&self, i: usize) -> u64 {
        let w = i >> 6;
        let s = i & 63;
        let lo = self.words.get(w).copied().unwrap_or(0);
        if s == 0 {
            lo
        } else {
            let hi = self.words.get(w + 1).copied().unwrap_or(0);
            (lo >> s) | (hi << (64 - s))
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// In-place AND with `other` read from bit offset `offset`.
    pub fn and_shifted(&mut self, other: &Bits, offset: usize) {
        for (wi, w) in self.words.iter_mut().enumerate() {
            *w &= other.word_at(offset + wi * 64);
        }
        self.clear_tail();
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits(")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_at_crosses_boundaries() {
        let mut b = Bits::zeros(200);
        for i in [3, 63, 64, 65, 130, 199] {
            b.set(i, true);
        }
        for off in 0..200 {
            let w = b.word_at(off);
            for j in 0..64 {
                let expect = off + j < 200 && b.get(off + j);
                assert_eq!((w >> j) & 1 == 1, expect, "off {off} j {j}");
            }
        }
    }

    #[test]
    fn ones_and_counts() {
        let b = Bits::ones(70);
        assert_eq!(b.count_ones(), 70);
        assert_eq!(b.count_ones_range(5, 69), 64);
        assert_eq!(b.iter_ones().count(), 70);
        let mut c = b.clone();
        c.truncate(3);
        assert_eq!(c.to_string(), "111");
    }
}
