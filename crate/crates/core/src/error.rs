use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent input (bad vertex ids, unnormalized weights, parse failures).
    #[error("input error: {0}")]
    Input(String),

    /// An operation was called outside its documented domain.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A structural statement that must hold on class members failed on this input.
    /// The witness lists the vertices involved.
    #[error("hypothesis violation [{lemma}]: {detail} (witness {witness:?})")]
    HypothesisViolation { lemma: &'static str, detail: String, witness: Vec<usize> },

    /// Instance exceeds a hard size cap.
    #[error("capacity exceeded: {what} has {got}, limit is {limit}")]
    Capacity { what: &'static str, got: usize, limit: usize },

    #[error("sampling budget exhausted after {attempts} attempts ({repairs} repairs)")]
    Sampling { attempts: usize, repairs: usize },

    /// Should be unreachable; signals a bug rather than a bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn violation(lemma: &'static str, detail: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::HypothesisViolation { lemma, detail: detail.into(), witness }
    }
}
