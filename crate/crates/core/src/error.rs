use thiserror::Error;

use crate::group::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A table failed one of the group axioms. The witness triple names the
    /// offending entries (unused slots are zero).
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup {
        reason: &'static str,
        witness: [usize; 3],
    },

    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("generating set is empty")]
    EmptyGenSet,

    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),

    #[error(
        "subgroup is not normal: conjugating element {element} by {conjugator} leaves the subgroup"
    )]
    NotNormal { element: Elem, conjugator: Elem },

    #[error(
        "generating set does not generate the group ({generated} of {order} elements reached)"
    )]
    NotGenerating { generated: usize, order: usize },

    #[error("walk has no steps")]
    EmptyWalk,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("no pivot: the quotient is not generated by a conjugate of the arc-forcing subgroup")]
    NoPivotFound,

    #[error("spliced walk failed verification: {0}")]
    SpliceVerificationFailed(String),

    #[error("order {0} is not a prime power")]
    NotPrimePower(usize),

    #[error("group is not nilpotent")]
    NotNilpotent,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("provider failed: {0}")]
    ProviderFailed(Box<Error>),

    #[error("group is not a direct product of a prime-power group and an abelian group: {0}")]
    StructureNotPxA(String),

    #[error("valence {0} exceeds 4")]
    ValenceTooLarge(usize),

    #[error("generators do not lie in a single coset of the normal subgroup")]
    CosetConditionViolated,

    #[error("{0} is not a prime congruent to 1 mod 6")]
    BadPrime(u64),

    #[error("no construction applies: {0}")]
    Unsupported(String),
}

impl Error {
    /// Short machine-readable name of the variant, used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::NotAGroup { .. } => "NotAGroup",
            Error::OrderCapExceeded { .. } => "OrderCapExceeded",
            Error::EmptyGenSet => "EmptyGenSet",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::NotNormal { .. } => "NotNormal",
            Error::NotGenerating { .. } => "NotGenerating",
            Error::EmptyWalk => "EmptyWalk",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
            Error::NoPivotFound => "NoPivotFound",
            Error::SpliceVerificationFailed(_) => "SpliceVerificationFailed",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::NotNilpotent => "NotNilpotent",
            Error::NotAbelian => "NotAbelian",
            Error::ProviderFailed(_) => "ProviderFailed",
            Error::StructureNotPxA(_) => "StructureNotPxA",
            Error::ValenceTooLarge(_) => "ValenceTooLarge",
            Error::CosetConditionViolated => "CosetConditionViolated",
            Error::BadPrime(_) => "BadPrime",
            Error::Unsupported(_) => "Unsupported",
        }
    }

    /// Whether this error reports malformed input rather than a failed
    /// mathematical precondition.
    pub fn is_format_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::UnknownLabel(_) | Error::DuplicateLabel(_)
        )
    }
}
