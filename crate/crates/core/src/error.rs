use crate::algebra::VarSpace;

/// Errors reported by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("variable space mismatch: {left} vs {right}")]
    SpaceMismatch { left: VarSpace, right: VarSpace },

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("invalid axis: {0}")]
    InvalidAxis(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("matrix is singular")]
    Singular,

    #[error("{what} does not lie in the span of {basis}")]
    NotInSpan { what: String, basis: String },

    #[error("condition failed: {0}")]
    ConditionFailed(String),

    #[error("not Lorentz-invariant: {generator} does not annihilate degree {degree}")]
    NotInvariant { generator: String, degree: usize },

    #[error("jet condition violated at exponent {exponents:?}")]
    JetCondition { exponents: Vec<u32> },

    #[error("restriction to x{axis} = 0 is nonzero: monomial {exponents:?}")]
    NotDivisible { axis: usize, exponents: Vec<u32> },

    #[error("inconsistent covariant system at grade {grade}: {reason}")]
    Inconsistent { grade: usize, reason: String },

    #[error("determinant is {0}, expected 1")]
    Determinant(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("type error: {0}")]
    Type(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
