use std::io;

use thiserror::Error;

use crate::circuit::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("circuit is not decomposable (and-node {0} has children sharing variables)")]
    NotDecomposable(NodeId),

    #[error("circuit is not smooth or does not mention every variable: {0}")]
    NotSmooth(String),

    #[error("circuit is inconsistent")]
    Inconsistent,

    #[error("circuit does not have the shape of a flat disjunction of terms")]
    NotDnfShape,

    #[error("weighted base is in family {found}, operation requires {expected}")]
    FamilyMismatch { expected: String, found: String },

    #[error("aggregator {0} is not supported by this algorithm")]
    UnsupportedAggregator(String),

    #[error("OWA weight vector has {weights} entries but the base has {items} items")]
    OwaArityMismatch { weights: usize, items: usize },

    #[error("OWA weights sum to {0}, expected exactly 1")]
    OwaNotNormalized(String),

    #[error("scores of different shapes cannot be compared")]
    IncomparableScores,

    #[error("term contains complementary or repeated literals on variable {0}")]
    InconsistentTerm(u32),

    #[error("fresh variable {0} already occurs in the diagram or is not last in the order")]
    FreshVarOccurs(u32),

    #[error("variable order mismatch: {0}")]
    OrderMismatch(String),

    #[error("weighted base has {n} items, above the cap of {cap}")]
    NExceedsCap { n: usize, cap: usize },

    #[error("{vars} variables exceed the enumeration cap of {cap}")]
    TooManyVars { vars: u32, cap: u32 },

    #[error("no tractable algorithm applies: {0}")]
    IntractableCombination(String),

    #[error("set {0} does not have exactly two elements")]
    BadSetSize(usize),

    #[error("clause {0} violates the required literal polarity")]
    ClausePolarityViolation(usize),

    #[error("variable {var} out of range (num_vars = {num_vars})")]
    VarOutOfRange { var: u32, num_vars: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format { line, message: message.into() }
    }
}
