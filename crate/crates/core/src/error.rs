//! Shared error type.  Every failure mode is explicit; nothing is silently
//! dropped or rounded.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A matrix/vector operation received operands of incompatible shape.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A created fermion mode would push a state above the energy window.
    #[error("energy window overflow: doubled energy {needed2} exceeds cap {emax2}")]
    WindowOverflow { needed2: i64, emax2: i64 },

    /// A matrix window is too small for the requested exact computation.
    #[error("matrix window too small: need indices in [{need_lo}, {need_hi}], have [{lo}, {hi}]")]
    WindowTooSmall {
        need_lo: i64,
        need_hi: i64,
        lo: i64,
        hi: i64,
    },

    /// An element fails a subalgebra membership test required by the operation.
    #[error("element is not in the requested subalgebra: {0}")]
    NotInSubalgebra(String),

    /// An element carries a central part where none is representable.
    #[error("central part must vanish here: {0}")]
    NonzeroCentral(String),

    /// An exponent multiset violates its family invariants.
    #[error("malformed exponent set: {0}")]
    MalformedExponentSet(String),

    /// A vector expected to be a simultaneous eigenvector is not one.
    #[error("not an eigenvector of {0}")]
    NotEigenvector(String),

    /// Series arithmetic on a non-invertible element.
    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    /// No global sign convention reconciles decoded and predicted labels.
    #[error("sign reconciliation failed: {0}")]
    ConventionFailure(String),

    /// Invalid argument supplied by a caller (CLI surfaces this as usage).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
