//! Hamiltonian walk constructions.
//!
//! Everything here returns a [`Walk`] only after checking it with
//! [`verify_hamiltonian`](crate::verify_hamiltonian) on the digraph it is
//! claimed for; a failed check is an error, never a fallback.

mod abelian;
mod arc_forcing;
mod builders;
mod pgroup;
mod splice;

use serde::Serialize;

pub use abelian::abelian_ham_path;
pub use arc_forcing::{arc_forcing_engine, arc_forcing_engine_traced};
pub use builders::{
    ham_cycle_coset_generators, ham_cycle_coset_generators_traced, ham_path_2gen,
    ham_path_2gen_traced, ham_path_pxa, ham_path_pxa_traced, ham_path_valence4,
    ham_path_valence4_traced,
};
pub use pgroup::{pgroup_ham_cycle, pgroup_ham_cycle_traced};
pub use splice::{product_splice, skewed_generators, skewed_splice, SkewedGenSet};

use crate::digraph::{verify_hamiltonian, CosetCayleyDigraph, Walk, WalkKind};
use crate::error::{Error, Result};
use crate::group::{GenSet, Group};

/// Produces a hamiltonian walk in `Cay(group; gens)`. Used for the quotient
/// solvers and the arc-forcing provider.
pub type Solver<'a> = dyn FnMut(&Group, &GenSet, &mut Trace) -> Result<Walk> + 'a;

/// Counters collected while a construction runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    /// Subnormal series built (each validated on construction).
    pub series_built: usize,
    /// Series that failed validation.
    pub series_violations: usize,
    /// Series steps where the ledger scan missed and a full scan was used.
    pub ledger_fallbacks: usize,
    /// Deepest p-group recursion seen (0 for a top-level call).
    pub max_depth: usize,
    /// Recursions deeper than `log₂` of the top-level order.
    pub depth_violations: usize,
    /// Skewed splices performed.
    pub skewed_splices: usize,
    /// Skewed splices whose pivot was not the last step of the base cycle.
    pub inner_pivots: usize,
}

impl Trace {
    pub fn absorb(&mut self, other: &Trace) {
        self.series_built += other.series_built;
        self.series_violations += other.series_violations;
        self.ledger_fallbacks += other.ledger_fallbacks;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.depth_violations += other.depth_violations;
        self.skewed_splices += other.skewed_splices;
        self.inner_pivots += other.inner_pivots;
    }
}

fn check_gens(g: &Group, s: &GenSet) -> Result<()> {
    if s.is_empty() {
        return Err(Error::EmptyGenSet);
    }
    s.check_range(g)
}

fn require_nilpotent(g: &Group) -> Result<()> {
    if g.is_nilpotent() {
        Ok(())
    } else {
        Err(Error::NotNilpotent)
    }
}

/// Replays `steps` from the identity in `Cay(g; s)` and checks the result.
fn certify(g: &Group, s: &GenSet, steps: Vec<String>, kind: WalkKind, what: &str) -> Result<Walk> {
    let d = CosetCayleyDigraph::cayley(g, s)?;
    let w = d.walk_from_identity(steps)?;
    if verify_hamiltonian(&d, &w, kind) {
        Ok(w)
    } else {
        Err(Error::SpliceVerificationFailed(format!(
            "{what} is not a hamiltonian {kind} of a digraph on {} vertices",
            d.vertex_count()
        )))
    }
}
