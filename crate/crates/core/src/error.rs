use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is outside the supported range 3..=65535")]
    InvalidModulus(u64),

    #[error("residue {residue} is not in [0, {modulus})")]
    ResidueOutOfRange { residue: u32, modulus: u32 },

    #[error("residue {0} appears more than once")]
    DuplicateResidue(u32),

    #[error("pitch-class set is empty")]
    EmptySet,

    #[error("set must contain 0; normalize it first")]
    MissingZero,

    #[error("interval class is undefined for identical residues ({0})")]
    Unison(u32),

    #[error("operation needs at least {needed} elements, got {got}")]
    TooFewElements { needed: usize, got: usize },

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("cardinality {k} is not valid for Z_{n} (need {min} <= k <= {n})")]
    InvalidCardinality { k: u32, n: u32, min: u32 },

    #[error(
        "enumerating ({n}, {k}) streams {compositions} compositions, over the budget of {limit}"
    )]
    ResourceLimit {
        n: u32,
        k: u32,
        compositions: u128,
        limit: u128,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sets are not Z-related: {0}")]
    NotZRelated(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}
