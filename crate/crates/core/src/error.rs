use thiserror::Error;

use crate::sign::IndexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("arrangement is not in general position (violation on {0})")]
    NotGeneralPosition(IndexSet),

    #[error("general-position retry budget of {0} draws exhausted")]
    RetryBudgetExhausted(usize),

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("index set {0} is not in the support")]
    NotInSupport(IndexSet),

    #[error("hyperplane {e} belongs to the index set {set}")]
    HyperplaneInSet { e: usize, set: IndexSet },

    #[error("stratum component is glued ambiguously: {0}")]
    AmbiguousGluing(String),

    #[error("density precondition violated: |S| = {size} exceeds {bound}")]
    Density { size: usize, bound: f64 },

    #[error("value {value} is below the representable range (minimum {min})")]
    BelowRange { value: f64, min: f64 },

    #[error("root k = {k} lies outside [{lo}, {hi}]")]
    RootOutOfRange { k: f64, lo: f64, hi: f64 },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("iteration cap of {0} steps reached")]
    IterationCap(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
