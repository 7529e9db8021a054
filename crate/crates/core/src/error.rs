use thiserror::Error;

use crate::formula::FormulaError;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the solving, detection and evaluation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Formula(#[from] FormulaError),

    #[error("formula is not a member of {class}")]
    NotInClass { class: String },

    #[error("no solution within budget {0}")]
    NoneWithin(usize),

    #[error("enumeration bound {required} exceeds the budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("{0}")]
    Unsupported(String),

    #[error("every solution would need a non-deletable vertex")]
    Infeasible,

    #[error("clause of width {width} exceeds the limit {limit}")]
    WidthExceeded { width: usize, limit: usize },

    #[error("not a valid {kind} backdoor set: {reason}")]
    InvalidBackdoor { kind: String, reason: String },

    #[error("invalid backdoor tree: {0}")]
    InvalidTree(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}
