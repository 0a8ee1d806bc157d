//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter is outside its documented domain (bad site index, degree,
    /// chain size, malformed operator term).
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid arithmetic configuration, e.g. a nonprime modulus.
    #[error("configuration error: {0}")]
    Config(String),

    /// Refused because the request exceeds a configured size cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// The operator violates a model assumption (nilpotency, retract shape,
    /// non-terminating perturbation series).
    #[error("model error: {0}")]
    Model(String),

    /// Exact arithmetic routes disagreed after all fallbacks.
    #[error("arithmetic disagreement: {0}")]
    Arithmetic(String),
}
