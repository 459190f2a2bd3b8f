use thiserror::Error;

/// Errors surfaced by the numerical machinery.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An elementary function was evaluated outside its domain.
    #[error("domain error: {func}({value}) is undefined")]
    Domain { func: &'static str, value: f64 },

    /// A parameter lies outside the range where the quantity is defined.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A degenerate configuration that is flagged rather than computed.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// A quadrature or iteration failed to produce a finite result.
    #[error("numerics error: {0}")]
    Numerics(String),

    /// Structurally invalid input (e.g. a non-orthonormal plane).
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
