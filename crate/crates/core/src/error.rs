use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series not in V(n={n}, a={a})")]
    NotInSpace { n: usize, a: i64 },
    #[error("series outside subspace V(n={n}, m={m}): nabla^{n} q(m) = {value}")]
    OutsideSubspace { n: usize, m: usize, value: String },
    #[error("series not in R(n={n}, m={m})")]
    NotInCone { n: usize, m: usize },
    #[error("label out of range: {0}")]
    LabelOutOfRange(String),
    #[error("label not a series family: {0}")]
    NotSeriesFamily(String),
    #[error("positive decomposition precondition violated: {0}")]
    LemmaPosPrecondition(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}
