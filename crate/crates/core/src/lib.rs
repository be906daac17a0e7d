//! Exact enumeration of ordered set partitions avoiding a permutation pattern.
//!
//! An ordered set partition of `[n] = {1, ..., n}` is a sequence of pairwise
//! disjoint blocks whose union is `[n]`; it contains a permutation pattern
//! `rho` of length `m` when one element can be picked from each of `m` blocks,
//! taken in block order, so that the picked values are order-isomorphic to
//! `rho`. This crate provides:
//!
//! * brute-force generators and counting oracles ([`generate`]),
//! * closed-form counting formulas for the tractable shapes ([`formulas`]),
//! * a memoized enumeration-scheme recursion for 123-avoidance with
//!   arbitrary block sizes ([`scheme`]),
//! * constructive bijections between avoidance classes ([`bijections`]),
//! * word-pattern duals via partition graph inversion ([`words`]),
//! * experiment harnesses for sequence tables and conjecture checks ([`lab`]).
//!
//! All counts are exact [`num_bigint::BigUint`] values; no floating point
//! enters a counting path.

pub mod bijections;
pub mod error;
pub mod formulas;
pub mod generate;
pub mod lab;
pub mod partition;
pub mod pattern;
pub mod scheme;
pub mod words;

pub use error::Error;
pub use partition::{standardize, BlockSizes, OrderedSetPartition};
pub use pattern::Pattern;
pub use words::Word;

/// Exact nonnegative count. Avoidance counts exceed 64 bits quickly.
pub type Count = num_bigint::BigUint;

/// Default cap on objects generated by a single brute-force oracle call.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
