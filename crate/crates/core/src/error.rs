use thiserror::Error;

use crate::fib::Witness;

/// Errors raised by the workbench.
///
/// Axiom violations of a composition table are *data* (see
/// [`ValidationReport`](crate::category::ValidationReport)); the variants here
/// cover structural problems and refused preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid profunctor: {0}")]
    InvalidProfunctor(String),
    #[error("invalid correspondence: {0}")]
    InvalidCorrespondence(String),
    #[error("not a two-sided discrete fibration: {0}")]
    NotTwoSidedDiscrete(String),
    #[error("fiber mismatch: {0}")]
    FiberMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("precondition failed: not {property}; witness {witness}")]
    Refused {
        property: String,
        witness: Box<Witness>,
    },
    #[error("enumeration exceeded the cap of {cap} candidates")]
    EnumerationCap { cap: u64 },
    #[error("matrix of size {rows}x{cols} exceeds the configured cap")]
    MatrixCap { rows: usize, cols: usize },
    #[error("integer overflow during Smith normal form reduction")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = CatError> = std::result::Result<T, E>;

/// Process exit status per failure class.
pub mod exit {
    pub const PARSE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const PRECONDITION: i32 = 4;
    pub const INTERNAL: i32 = 5;
}

impl CatError {
    /// Exit status of the failure class this error belongs to. Unknown ids
    /// are reference errors in the input document and count as parse
    /// failures; mismatched fibers and exceeded caps count as refused
    /// preconditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            CatError::UnknownObject(_)
            | CatError::UnknownMorphism(_)
            | CatError::DuplicateId(_)
            | CatError::Malformed(_) => exit::PARSE,
            CatError::InvalidCategory(_)
            | CatError::InvalidFunctor(_)
            | CatError::InvalidProfunctor(_)
            | CatError::InvalidCorrespondence(_)
            | CatError::NotTwoSidedDiscrete(_) => exit::VALIDATION,
            CatError::FiberMismatch(_)
            | CatError::Precondition(_)
            | CatError::Refused { .. }
            | CatError::EnumerationCap { .. }
            | CatError::MatrixCap { .. }
            | CatError::Overflow => exit::PRECONDITION,
            CatError::Internal(_) => exit::INTERNAL,
        }
    }

    /// Refusal of an operation whose input lacks `property`.
    pub fn refused(property: &str, witness: Witness) -> Self {
        CatError::Refused {
            property: property.into(),
            witness: Box::new(witness),
        }
    }
}
