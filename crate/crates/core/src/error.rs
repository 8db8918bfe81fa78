use thiserror::Error;

/// Errors raised by state construction and the entanglement analyses.
///
/// Everything except [`Error::Numerical`] is an input validation failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("site dimensions are invalid: {0}")]
    InvalidDims(String),

    #[error("expected {expected} amplitudes, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("amplitude vector is zero")]
    ZeroVector,

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("state is not normalized: norm = {0}")]
    NotNormalized(f64),

    #[error("invalid bipartition: {0}")]
    InvalidCut(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("factor on site {site} is not unitary (max |U^dag U - I| = {deviation:e})")]
    NotUnitary { site: usize, deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires {expected}, got dims {found:?}")]
    WrongShape { expected: &'static str, found: Vec<usize> },

    #[error("numerical invariant violated: {0}")]
    Numerical(String),
}

impl Error {
    /// True for internal invariant violations, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
