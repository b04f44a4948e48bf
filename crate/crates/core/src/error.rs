use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
///
/// The CLI turns each variant into an exit code; see [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term {constant} is not a unit (expected 1 or -1)")]
    NotAUnit { constant: String },

    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("requested order {requested} exceeds the order {available} supported by the inputs")]
    OrderTooLong { requested: usize, available: usize },

    #[error("zero module: constant term of the Poincaré series is 0")]
    ZeroModule,

    #[error("trivial fiber product: {0}")]
    TrivialFiberProduct(String),

    #[error("invalid Betti sequence at {field}: {message}")]
    InvalidBetti { field: String, message: String },

    #[error("invalid denominator: {0}")]
    InvalidDenominator(String),

    #[error("index {index} out of range (sequence has {len} entries)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid value at {field}: {message}")]
    Validation { field: String, message: String },

    #[error("internal-degree budget {max_internal} exhausted before homological degree {hom_degree} was complete")]
    BudgetExceeded {
        hom_degree: usize,
        max_internal: usize,
    },

    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 2,
            Error::Inconsistency(_) => 3,
            _ => 1,
        }
    }
}
