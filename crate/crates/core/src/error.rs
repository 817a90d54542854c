use thiserror::Error;

/// Errors raised by the library.
///
/// Checks that can fail mathematically are reported as verdicts inside
/// reports. The single exception is `Falsified`, raised by leaf operations
/// whose hypotheses are theorems (for example the negative Pell equation
/// for primes `p ≡ 1 (mod 4)`); the verifier records it as a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An internal consistency check failed. This indicates an upstream
    /// miscomputation, never a property of the input.
    #[error("structural error: {0}")]
    Structural(String),
    /// A proven statement did not hold for this input.
    #[error("falsification: {0}")]
    Falsified(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
