use thiserror::Error;

/// Errors raised by lattice construction, game handling and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A lattice or enumeration request exceeds the configured cap.
    #[error("size limit exceeded: {what} requested for n={n}, cap is {cap}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    /// A value is missing for some lattice element or class.
    #[error("totality error: missing value for {0}")]
    Totality(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// The operation is not defined on this kind of lattice.
    #[error("wrong lattice: expected {expected}, found {found}")]
    WrongLattice {
        expected: &'static str,
        found: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
