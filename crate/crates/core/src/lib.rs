//! Finite group kernel and constructive hamiltonian walks in Cayley digraphs
//! on nilpotent groups.
//!
//! Groups are stored as full multiplication tables with the identity at
//! index 0. Every construction in [`engine`] re-verifies the walk it returns
//! against the digraph it claims to traverse, so a returned [`Walk`] is always
//! a certified hamiltonian path or cycle.

pub mod builtin;
pub mod digraph;
pub mod engine;
pub mod error;
pub mod group;
pub mod io;
pub mod oracle;
pub mod series;

pub use digraph::{verify_hamiltonian, CosetCayleyDigraph, Walk, WalkKind};
pub use engine::{
    abelian_ham_path, arc_forcing_engine, ham_cycle_coset_generators, ham_path_2gen, ham_path_pxa,
    ham_path_valence4, pgroup_ham_cycle, product_splice, skewed_splice, Trace,
};
pub use error::{Error, Result};
pub use group::{Elem, GenEntry, GenSet, Group, QuotientGroup, Subgroup, SylowDecomposition};
pub use series::{build_subnormal_series, SeriesMode, SubnormalSeries};
