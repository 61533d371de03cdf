use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("form is degenerate in its first slot")]
    Degenerate,

    #[error("form is not preregular: {0}")]
    NotPreregular(String),

    #[error("linear system has no solution: {0}")]
    NoSolution(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("work budget of {budget} exceeded ({what})")]
    BudgetExceeded { budget: usize, what: String },

    #[error("alphabet mismatch: symbol {0} is not in the alphabet")]
    AlphabetMismatch(String),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("morphism error: {0}")]
    Morphism(String),

    #[error("matrix {0} is not an automorphism of the form")]
    NotAutomorphism(String),

    #[error("evaluation leaves the module window at degree {0}")]
    OutOfWindow(i64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
