//! Fixtures shared by the benchmark targets.

use nilham_core::{builtin, GenSet, Group};

/// A builtin group with a generating set given by labels.
pub fn fixture(name: &str, gens: &str) -> (Group, GenSet) {
    let g = builtin::parse(name).unwrap_or_else(|e| panic!("{name}: {e}"));
    let s = GenSet::parse(&g, gens).unwrap_or_else(|e| panic!("{name} {gens}: {e}"));
    (g, s)
}
