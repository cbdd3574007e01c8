use thiserror::Error;

use crate::term::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Precondition and construction errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binding {0} -> {0} is not a binding")]
    TrivialBinding(Var),
    #[error("variable {0} is bound to two different terms")]
    ConflictingBinding(Var),
    #[error("substitution has a circular subset")]
    NotRationalSolvedForm,
    #[error("substitution is not idempotent")]
    NotIdempotent,
    #[error("substitution is not variable-idempotent")]
    NotVariableIdempotent,
    #[error("variable {0} is not in the domain of the substitution")]
    NotInDomain(Var),
    #[error("an S-step needs two distinct bindings, got {0} twice")]
    SameBinding(Var),
    #[error("sharing groups are nonempty")]
    EmptyGroup,
    #[error("sharing group is not contained in the universe")]
    GroupOutsideUniverse,
    #[error("alphabet needs two distinct functors, one of them a constant")]
    InvalidAlphabet,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("instance too large for the brute-force oracle: {0}")]
    InstanceTooLarge(String),
}
