//! Seeded generators for eventually periodic sets and embeddable pairs.

use crate::bits::Bits;
use crate::natset::{NatSet, Periodic};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random eventually periodic set with threshold `<= max_t` and period in `[1, max_p]`
/// before normalization. `density` is the probability of each bit being set.
pub fn periodic<R: Rng>(rng: &mut R, max_t: usize, max_p: usize, density: f64) -> Periodic {
    let t = rng.gen_range(0..=max_t);
    let p = rng.gen_range(1..=max_p);
    let tr = Bits::from_bools((0..t).map(|_| rng.gen_bool(density)));
    let mask = Bits::from_bools((0..p).map(|_| rng.gen_bool(density)));
    Periodic::new(tr, mask)
}

pub fn natset<R: Rng>(rng: &mut R, max_t: usize, max_p: usize) -> NatSet {
    let density = rng.gen_range(0.2..0.9);
    periodic(rng, max_t, max_p, density).into()
}

/// A pair `(A, B)` with `A ≤fe B` by construction: `A` is a thinned copy of `B - k`.
pub fn embeddable_pair<R: Rng>(rng: &mut R, max_t: usize, max_p: usize) -> (NatSet, NatSet) {
    let b = natset(rng, max_t, max_p);
    let p = b.as_periodic().expect("decidable");
    let k = rng.gen_range(0..p.threshold() + p.period() + 4);
    let keep = rng.gen_range(0.5..1.0);
    let thin = periodic(rng, max_t, max_p, keep);
    let a = b.shift_left(k).intersect(&thin.into());
    (a, b)
}

/// Non-empty set whose tail mask has at least one zero (so it is not thick).
pub fn non_thick<R: Rng>(rng: &mut R, max_t: usize, max_p: usize) -> NatSet {
    loop {
        let s = natset(rng, max_t, max_p);
        let p = s.as_periodic().expect("decidable");
        if !p.is_cofinite() && !p.is_empty() {
            return s;
        }
    }
}

/// Cofinite set: a random finite set of holes below `max_t`.
pub fn cofinite<R: Rng>(rng: &mut R, max_t: usize) -> NatSet {
    let t = rng.gen_range(0..=max_t);
    let tr = Bits::from_bools((0..t).map(|_| rng.gen_bool(0.5)));
    Periodic::new(tr, Bits::ones(1)).into()
}
