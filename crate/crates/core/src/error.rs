//! Engine-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("division by zero in Q(n)")]
    DivisionByZero,

    #[error("rational function has a pole at n = {0}")]
    PoleAtDimension(i64),

    #[error("malformed contraction: pair id {0} appears {1} times in a term")]
    MalformedContraction(u32, usize),

    #[error("contracted pair {0} does not have opposite variance")]
    VarianceMismatch(u32),

    #[error("free index mismatch: expected {expected:?}, found {found:?}")]
    FreeIndexMismatch { expected: Vec<String>, found: Vec<String> },

    #[error("product of unknown scalars is not linear: {0} * {1}")]
    NonlinearUnknowns(String, String),

    #[error("no term shape matches {0} in the given basis")]
    UnmatchedShape(String),

    #[error("rewrite rule for {0} does not decrease derivative order")]
    NonTerminatingRule(String),

    #[error("bundle {0} is not a summand of the cotangent product of {1}")]
    NotASummand(String, String),

    #[error("normalization system for gradient {0} -> {1} is {2}")]
    GradientNormalization(String, String, String),

    #[error("prolongation closure failed at {context}: {detail}")]
    ClosureFailure { context: String, detail: String },

    #[error("invalid bundle label: {0}")]
    BadBundleLabel(String),

    #[error("dimension {0} is below the stable range for this computation")]
    UnstableDimension(i64),

    #[error("{0}")]
    Unsupported(String),
}
