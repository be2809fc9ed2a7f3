use thiserror::Error;

/// Errors raised by field construction, code construction and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not an odd prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field order {order} exceeds the table limit {limit}")]
    TableLimitExceeded { order: u128, limit: u64 },
    #[error("{0} is not a prime power of odd characteristic")]
    NotAPrimePower(u64),
    #[error("the quadratic character is undefined at zero")]
    ZeroArgument,
    #[error("GF({r}) is not a subfield of GF({q})")]
    NotASubfield { r: u64, q: u64 },
    #[error("basis is linearly dependent over GF({0})")]
    DependentBasis(u64),
    #[error("element {code} does not belong to GF({q})")]
    InvalidElement { code: u64, q: u64 },
    #[error("element of GF({found}) used with GF({expected})")]
    FieldMismatch { expected: u64, found: u64 },
    #[error("field descriptor does not match the canonical realization of GF({0})")]
    DescriptorMismatch(u64),

    #[error("evaluation points are not distinct")]
    DuplicatePoints,
    #[error("expected an even number of points, got {0}")]
    OddLength(usize),
    #[error("expected an odd number of points, got {0}")]
    EvenLength(usize),
    #[error("multiplier vector is not set")]
    MultipliersUnset,
    #[error("multiplier vector is invalid: {0}")]
    InvalidMultipliers(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("enumeration of {size} messages exceeds the limit {limit}")]
    EnumerationTooLarge { size: u128, limit: u64 },
    #[error("code length {length} exceeds the length limit {limit}")]
    LengthLimitExceeded { length: u128, limit: u64 },

    #[error("shift lies in the subspace")]
    ShiftInSubspace,
    #[error("base points are not in the subfield GF({0})")]
    BasePointsNotInSubfield(u64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("base code does not satisfy the self-dual criterion")]
    BaseNotSelfDual,
    #[error("neither q = 1 (mod 4) nor even subspace dimension holds")]
    ParityCondition,
    #[error("e1 = {0} is not odd")]
    E1NotOdd(u64),
    #[error("character condition fails: {0}")]
    CharacterCondition(String),
    #[error("points are not contained in the subgroup H1")]
    PointsOutsideSubgroup,
    #[error("{t} cosets requested but only {bound} are distinct")]
    TooManyCosets { t: u64, bound: u64 },
    #[error("greedy square clique stopped at {found} of {wanted} points")]
    GreedyFailed { found: usize, wanted: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse grouping used for exit codes and catalog bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input parameters fall outside a construction's hypotheses.
    Hypothesis,
    /// A configured size limit was hit.
    Limit,
    /// Malformed input.
    Input,
    /// An internal identity failed.
    Verification,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            CompositeCharacteristic(_)
            | NotAPrimePower(_)
            | NotASubfield { .. }
            | OddLength(_)
            | EvenLength(_)
            | ShiftInSubspace
            | BasePointsNotInSubfield(_)
            | HypothesisViolated(_)
            | BaseNotSelfDual
            | ParityCondition
            | E1NotOdd(_)
            | CharacterCondition(_)
            | PointsOutsideSubgroup
            | TooManyCosets { .. } => ErrorKind::Hypothesis,
            TableLimitExceeded { .. } | LengthLimitExceeded { .. } | EnumerationTooLarge { .. } => {
                ErrorKind::Limit
            }
            InvalidDegree
            | ZeroArgument
            | DependentBasis(_)
            | InvalidElement { .. }
            | FieldMismatch { .. }
            | DescriptorMismatch(_)
            | DuplicatePoints
            | MultipliersUnset
            | InvalidMultipliers(_)
            | ShapeMismatch(_)
            | Parse(_) => ErrorKind::Input,
            GreedyFailed { .. } | VerificationFailed(_) => ErrorKind::Verification,
        }
    }
}

pub(crate) fn hypothesis(msg: impl Into<String>) -> Error {
    Error::HypothesisViolated(msg.into())
}

pub(crate) fn verification(msg: impl Into<String>) -> Error {
    Error::VerificationFailed(msg.into())
}
