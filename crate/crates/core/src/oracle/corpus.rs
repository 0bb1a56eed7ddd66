use crate::builtin;
use crate::group::{prime_power, Group};

/// Coarse structure class of a corpus group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Prime-power order (including the trivial group).
    PGroup,
    /// Nilpotent but not of prime-power order.
    Nilpotent,
    NonNilpotent,
}

#[derive(Clone, Debug)]
pub struct CorpusGroup {
    /// Built-in name, accepted by [`builtin::parse`].
    pub name: String,
    pub group: Group,
    pub family: Family,
}

impl CorpusGroup {
    pub fn new(name: &str) -> crate::Result<CorpusGroup> {
        let group = builtin::parse(name)?;
        let family = if group.order() == 1 || prime_power(group.order() as u64).is_some() {
            Family::PGroup
        } else if group.is_nilpotent() {
            Family::Nilpotent
        } else {
            Family::NonNilpotent
        };
        Ok(CorpusGroup {
            name: name.to_string(),
            group,
            family,
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.family != Family::NonNilpotent
    }
}

const NAMES: &[&str] = &[
    // cyclic
    "z2",
    "z3",
    "z4",
    "z5",
    "z6",
    "z7",
    "z8",
    "z9",
    "z10",
    "z12",
    "z15",
    "z16",
    "z18",
    "z20",
    "z24",
    "z25",
    "z27",
    "z32",
    "z36",
    "z64",
    // other abelian
    "product:z2,z2",
    "product:z2,z2,z2",
    "product:z4,z2",
    "product:z3,z3",
    "product:z2,z6",
    "product:z2,z2,z2,z2",
    "product:z4,z4",
    "product:z8,z2",
    "product:z3,z6",
    "product:z3,z3,z3",
    "product:z2,z12",
    "product:z5,z5",
    "product:z4,z8",
    "product:z2,z2,z2,z2,z2",
    "product:z8,z8",
    // non-abelian p-groups
    "d8",
    "q8",
    "d16",
    "q16",
    "m16",
    "product:d8,z2",
    "product:q8,z2",
    "h3",
    "d32",
    "q32",
    "m32",
    "product:d8,z4",
    "product:d8,z2,z2",
    "product:q8,z4",
    "d64",
    "q64",
    "product:d16,z4",
    "product:d8,d8",
    // nilpotent, not of prime-power order
    "product:d8,z3",
    "product:q8,z3",
    "product:d8,z5",
    "product:q8,z5",
    "product:d16,z3",
    "product:q16,z3",
    "product:d8,z6",
    "product:q8,z6",
    "product:h3,z2",
    // not nilpotent
    "s3",
    "d10",
    "d12",
    "q12",
    "d14",
    "s4",
];

/// Direct products `P × A` exercised by the `P × A` suite.
pub(crate) const PXA_NAMES: &[&str] = &[
    "product:d8,z2",
    "product:d8,z3",
    "product:d8,z4",
    "product:d8,z6",
    "product:q8,z2",
    "product:q8,z3",
    "product:q8,z4",
    "product:q8,z6",
    "product:h3,z2",
    "product:h3,z3",
    "product:h3,z4",
    "product:h3,z6",
];

/// The built-in test corpus, in a fixed order.
pub fn corpus() -> Vec<CorpusGroup> {
    NAMES
        .iter()
        .map(|name| CorpusGroup::new(name).expect("corpus names are valid"))
        .collect()
}
