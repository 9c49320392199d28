use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported dimension {got}; allowed dimensions are {allowed}")]
    UnsupportedDimension { got: usize, allowed: &'static str },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("doubling parameter alpha must be nonzero")]
    ZeroAlpha,

    #[error("base algebra is not unital")]
    NotUnital,

    #[error("invalid structure tensor: {0}")]
    InvalidStructure(String),

    #[error("operator matrix is not an embedded octonion: {0}")]
    NotEmbedded(String),

    #[error("cannot add entries with and without a trailing epsilon: {0}")]
    MixedEntry(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(
        "ambiguous product at {start}..{end}: grouping of three or more factors must be explicit"
    )]
    AmbiguousProduct { start: usize, end: usize },

    #[error("expression is not polynomial: {0}")]
    NonPolynomial(String),

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("kappa' = 1 admits no finite rescaling of the scalar component")]
    DegenerateKappa,

    #[error("{0}")]
    Usage(String),

    #[error("unsupported form {form} for dimension {n}")]
    UnsupportedForm { form: String, n: usize },

    #[error("block form is inconsistent with the real form: {0}")]
    BlockMismatch(String),

    #[error("invalid componentwise polynomial: {0}")]
    InvalidPolynomial(String),
}

pub type Result<T> = std::result::Result<T, Error>;
