//! Finite embeddability of subsets of ℕ.
//!
//! `A ≤fe B` holds when every finite subset of `A` has a rightward translate
//! inside `B`. The crate decides it exactly for eventually periodic sets,
//! semi-decides it with certificates for generator-backed sets, and lifts it
//! to finitely generated and chain filter bases.

pub mod bits;
pub mod embed;
pub mod error;
pub mod filters;
pub mod natset;
pub mod random;
pub mod structure;
pub mod verdict;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use natset::{parse_expr, NatSet, Tier, Window};
pub use verdict::{Horizon, Verdict3};
