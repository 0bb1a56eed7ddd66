//! Finite groups as multiplication tables, and the subgroup, coset and
//! quotient machinery built on top of them.

mod arith;
mod genset;
mod quotient;
mod subgroup;
mod sylow;
mod table;

pub use arith::{factorize, is_prime, prime_power};
pub use genset::{GenEntry, GenSet};
pub use quotient::QuotientGroup;
pub use subgroup::{CosetTable, Subgroup};
pub use sylow::{SylowDecomposition, SylowFactor};
pub use table::{Group, DEFAULT_MAX_ORDER, EXHAUSTIVE_ASSOCIATIVITY_LIMIT};

/// Index of a group element. The identity is always `0`.
pub type Elem = usize;
