//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes identically under substitution")]
    VanishingDenominator,

    #[error("{0}")]
    Pole(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("element is not invertible in the quotient ring")]
    NotInvertible,

    #[error("the fraction 0/0 has no continued fraction expansion")]
    ZeroOverZero,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("flow integration crossed a branch cut")]
    BranchCrossing,
}
