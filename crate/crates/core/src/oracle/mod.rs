//! Independent ground truth for the engine: exhaustive hamiltonian search,
//! the inequality that rules out hamiltonian paths for some two-generated
//! groups, a fixture family for it, and the property harness that runs the
//! engine over a corpus of small groups.

mod corpus;
mod harness;
mod milnor;
mod search;

pub use corpus::{corpus, CorpusGroup, Family};
pub use harness::{
    property_harness, CaseRecord, HarnessConfig, HarnessReport, Outcome, Suite, SuiteSummary,
    DEFAULT_SEED,
};
pub use milnor::{milnor_nonexistence, semidirect_fixture};
pub use search::{brute_force_ham, brute_force_ham_counted, SearchBudget, SearchResult};
