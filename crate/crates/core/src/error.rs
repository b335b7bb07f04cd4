use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("generators not independent")]
    DependentGenerators,
    #[error("empty point list")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("multiplicity defined only for simple polytopes")]
    NotSimple,
    #[error("polytope is not Delzant")]
    NotDelzant,
    #[error("map is not unimodular (|det| = {0})")]
    NotUnimodular(String),
    #[error("summands not strongly isomorphic: {0}")]
    NotStronglyIsomorphic(String),
    #[error("classification violated: {0}")]
    ClassificationViolated(String),
    #[error("malformed input at `{field}`: {message}")]
    Malformed { field: String, message: String },
    #[error("internal consistency violation: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::ClassificationViolated(_))
    }
}

impl Error {
    pub fn malformed(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Malformed { field: field.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
