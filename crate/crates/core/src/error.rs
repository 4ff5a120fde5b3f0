use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An element fell outside the interval a set was declared over.
    #[error("element {value} outside [{lo}, {hi}]")]
    Range { value: i64, lo: i64, hi: i64 },

    /// The requested computation exceeds the enumeration budget.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid linear form: {0}")]
    Validation(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Exact integer arithmetic left the representable range.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// A measured record broke one of the deterministic set identities.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
