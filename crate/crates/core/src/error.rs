use thiserror::Error;

/// Errors raised by the invariant engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("argument outside the domain of {0}")]
    DomainViolation(&'static str),
    #[error("coefficient q^{exponent} requested but series is only reliable below q^{trunc}")]
    TruncationTooSmall { exponent: i64, trunc: i64 },
    #[error("curve class has multiplicity {0}; a primitive class is required")]
    NotPrimitive(u64),
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("B-classes are only available for rank-zero Mukai vectors (got rank {0})")]
    UnsupportedRank(String),
    #[error("degenerate Hilbert scheme index d = {0} (2d - 2 must be nonzero)")]
    DegenerateD(u64),
    #[error("table has no entry for divisor {0}")]
    MissingDivisor(u64),
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
