use thiserror::Error;

/// Errors raised by the library. Verification mismatches are not errors;
/// they are reported as data by the `series::verify` reports.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(i64),

    #[error("series operation requires {0}")]
    ConstantTerm(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("work budget of {budget} memo entries exceeded")]
    BudgetExceeded { budget: usize },

    #[error("tail bound not met: {0}")]
    TailBound(String),

    #[error("degree check failed for d(n, {k}): sample n = {n} is off the interpolant")]
    Overdetermined { k: usize, n: usize },

    #[error("structure falsified for l = {l}: {detail}")]
    StructureFalsified { l: usize, detail: String },

    #[error("insufficient table depth: need {required}, have {available}")]
    InsufficientDepth { required: usize, available: usize },

    #[error("precision starvation: {0}")]
    PrecisionStarvation(String),

    #[error("branch tracking failed at n = {0}")]
    BranchTracking(usize),

    #[error("input too short: need at least {required} terms, got {got}")]
    TooShort { required: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("singular linear system")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
