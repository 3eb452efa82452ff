use thiserror::Error;

/// Every failure mode of the engine.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed scalar towers: {0} and {1}")]
    MixedTowers(&'static str, &'static str),
    #[error("operator does not preserve Laurent polynomials on this input (remainder {0})")]
    NonExactDivision(String),
    #[error("inadmissible shift {0}: non-integer power of q^(1/2)")]
    InadmissibleShift(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("conjugation requires parametric provenance")]
    NoProvenance,
    #[error("not a shift operator of shift {0}")]
    NotShiftOperator(String),
    #[error("not in the span: {0}")]
    NotInSpan(String),
    #[error("eigenvalue collision: {0}")]
    EigenvalueCollision(String),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("polynomial is not symmetric under z -> 1/z")]
    Asymmetric,
    #[error("construction mismatch: {0}")]
    Mismatch(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("degenerate limit: {0}")]
    DegenerateLimit(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
