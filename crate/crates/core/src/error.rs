use thiserror::Error;

use crate::event::Event;

/// Errors shared by every layer of the library.
///
/// Property checks never report a violated property through this type: a
/// violated property is a regular `false` verdict with a witness. Errors are
/// reserved for ill-formed inputs (alphabet mismatches, inclusion
/// preconditions, invariant failures) and resource caps.
#[derive(Debug, Error)]
pub enum DesError {
    #[error("alphabet mismatch: {only_left:?} only on the left, {only_right:?} only on the right")]
    AlphabetMismatch {
        only_left: Vec<Event>,
        only_right: Vec<Event>,
    },

    #[error("{what} is not a sublanguage of {of}; counterexample: {witness}")]
    InclusionViolated {
        what: String,
        of: String,
        witness: String,
    },

    #[error("empty specification language")]
    EmptySpecification,

    #[error("state-space cap exceeded: {states} states (cap {cap})")]
    StateCapExceeded { states: usize, cap: usize },

    #[error("fixpoint iteration cap exceeded after {rounds} rounds")]
    IterationCapExceeded { rounds: usize },

    #[error("specification is not conditionally decomposable; counterexample: {witness}")]
    NotDecomposable { witness: String },

    #[error("oracle size cap exceeded: {words} words in the bounded specification (cap {cap})")]
    OracleCapExceeded { words: usize, cap: usize },

    #[error("the requested sublanguage family is not closed under unions")]
    FamilyNotUnionClosed,

    #[error("operation cancelled")]
    Cancelled,

    #[error("{0}")]
    InvalidInput(String),
}

impl DesError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        DesError::InvalidInput(msg.into())
    }
}
