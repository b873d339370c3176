use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Trial division gave up before the cofactor was known to be prime.
    #[error("factorization limit: no factor of {cofactor} found below candidate cap {cap}")]
    FactorizationLimit { cofactor: String, cap: u64 },

    /// A hypothesis of the operation does not hold for the given input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The input is the all-equal configuration where the transformation vanishes.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// `(x+y+z)³` is not an integer multiple of `xyz`.
    #[error("not representable: {0}")]
    NotRepresentable(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
