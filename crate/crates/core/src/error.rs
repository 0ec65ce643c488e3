use alloc::string::String;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("entry size exceeded the {max_bits}-bit limit")]
    EntryTooLarge { max_bits: u64 },
    #[error("time budget exhausted")]
    BudgetExhausted,
    #[error("minor enumeration refused: min dimension {dim} exceeds oracle bound {bound}")]
    OracleBound { dim: usize, bound: usize },
    #[error("cannot factor {value}: cofactor has prime factors beyond trial-division limit {limit}")]
    FactorizationBound { value: String, limit: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {order} exceeds bound {bound}")]
    FieldTooLarge { order: u64, bound: u64 },
    #[error("{what}: {count} objects exceeds bound {bound}")]
    TooMany { what: &'static str, count: u128, bound: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("cannot parse spec: {0}")]
    Parse(String),
    #[error("hypotheses not satisfied: {0}")]
    Inapplicable(String),
}

impl Error {
    /// True for errors signalling that an instance is beyond the configured budget.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::EntryTooLarge { .. }
                | Error::BudgetExhausted
                | Error::OracleBound { .. }
                | Error::FieldTooLarge { .. }
                | Error::TooMany { .. }
                | Error::FactorizationBound { .. }
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
