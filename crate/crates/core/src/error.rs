use alloc::string::String;

/// Every failure the library reports. Each variant corresponds to one
/// machine-readable error code (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Shape mismatch: non-square matrix, wrong number of representatives, ...
    #[error("dimension error: {0}")]
    Dimension(String),
    /// Input outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed input data.
    #[error("format error: {0}")]
    Format(String),
    /// Sampled data too coarse for an exact degree count.
    #[error("undersampled: {0}")]
    Undersampled(String),
    /// Coefficients violate the realizability conditions.
    #[error("not realizable: {0}")]
    Realizability(String),
    /// Two computations that must agree did not.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    /// Every probe direction hit a degenerate configuration.
    #[error("degenerate configuration: {0}")]
    Degeneracy(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Domain(_) => "domain",
            Error::Format(_) => "format",
            Error::Undersampled(_) => "undersampled",
            Error::Realizability(_) => "realizability",
            Error::Inconsistency(_) => "inconsistency",
            Error::Degeneracy(_) => "degeneracy",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
