use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder of degree {remainder_degree}")]
    NotDivisible { remainder_degree: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term of the series must be 1")]
    NonUnitConstantTerm,

    #[error("constant term of the series must be 0")]
    NonZeroConstantTerm,

    #[error("enumeration of {what} exceeds the limit ({size} > {limit})")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("{raw} irreducible tuples is not a multiple of |PGL| = {pgl_order}")]
    NonIntegerOrbitCount { raw: u64, pgl_order: u64 },

    #[error("expected an integer but found {value}")]
    NonIntegral { value: String },

    #[error("unsupported field size {0}; expected one of 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedField(u32),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable name of the variant, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotDivisible { .. } => "NotDivisible",
            Error::DivisionByZero => "DivisionByZero",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::NonUnitConstantTerm => "NonUnitConstantTerm",
            Error::NonZeroConstantTerm => "NonZeroConstantTerm",
            Error::TooLarge { .. } => "TooLarge",
            Error::NonIntegerOrbitCount { .. } => "NonIntegerOrbitCount",
            Error::NonIntegral { .. } => "NonIntegral",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
