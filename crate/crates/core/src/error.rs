use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Invalid input: size mismatch, cell outside a diagram, zero operator index.
    #[error("argument error: {0}")]
    Argument(String),
    /// A configured cost or size bound would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// Input lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation at a pole of `ℰ(z)`.
    #[error("pole: {0}")]
    Pole(String),
    /// Quadrature, root finding or optimization failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// An internal invariant was violated.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by the caller's arguments rather than by numerics.
    pub fn is_argument(&self) -> bool {
        matches!(self, Error::Argument(_) | Error::Domain(_) | Error::Resource(_))
    }
}

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
