use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("variable index {var} out of range for a ring of arity {arity}")]
    VariableOutOfRange { var: usize, arity: usize },

    #[error("{0}: zero polynomial not allowed")]
    ZeroPolynomial(&'static str),

    #[error("{0}: empty input")]
    EmptyInput(&'static str),

    #[error("sylvester matrix undefined: both polynomials have degree zero in the variable")]
    ConstantPair,

    #[error("expected a bivariate ring, got arity {0}")]
    NotBivariate(usize),

    #[error("invalid term order: {0}")]
    InvalidOrder(String),

    #[error("point ({x}, {y}) does not lie on the curve")]
    PointNotOnCurve { x: String, y: String },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
