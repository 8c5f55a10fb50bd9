use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    /// The requested argument lies outside every case guard of the closed form.
    #[error("not covered by closed form: {what} (nearest: {nearest})")]
    NotCovered { what: String, nearest: String },

    /// Exhaustive work would exceed the configured budget.
    #[error("work budget exceeded: needs 2^{required_log2} operations, budget is 2^{budget_log2}")]
    Budget { required_log2: u32, budget_log2: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    /// A result that must be exact came out fractional or inconsistent.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn not_covered(what: impl Into<String>, nearest: impl Into<String>) -> Self {
        Error::NotCovered {
            what: what.into(),
            nearest: nearest.into(),
        }
    }
}
