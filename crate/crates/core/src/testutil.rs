use crate::bits::Bits;
use crate::natset::Periodic;
use proptest::prelude::*;

pub fn arb_periodic(max_t: usize, max_p: usize) -> impl Strategy<Value = Periodic> {
    (
        prop::collection::vec(any::<bool>(), 0..=max_t),
        prop::collection::vec(any::<bool>(), 1..=max_p),
    )
        .prop_map(|(t, m)| Periodic::new(Bits::from_bools(t), Bits::from_bools(m)))
}
