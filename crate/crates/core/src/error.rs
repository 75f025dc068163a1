use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix has {cols} columns, more than the supported maximum of {max}")]
    TooManyColumns { cols: usize, max: usize },

    #[error("dimension {k} exceeds the enumeration budget of {max}")]
    DimensionOverBudget { k: usize, max: usize },

    #[error("generator matrix is rank deficient: {rows} rows but rank {rank}")]
    RankDeficient { rows: usize, rank: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("coordinate {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("word is not a codeword of the code")]
    NotACodeword,

    #[error("the zero word is not allowed here")]
    ZeroWord,

    #[error("the zero code has no divisor")]
    ZeroCode,

    #[error("Krawtchouk index out of range: degree {degree}, point {point}, length {len}")]
    KrawtchoukRange { degree: usize, point: usize, len: usize },

    #[error("residual weight parity violated: {w1} + {w2} - {w} must be even and nonnegative")]
    ResidualParity { w1: usize, w2: usize, w: usize },

    #[error("invalid linear program: {0}")]
    InvalidProgram(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("invalid search specification: {0}")]
    InvalidSpec(String),

    #[error("database error: {0}")]
    Database(String),

    #[error("unknown check id {0:?}")]
    UnknownCheck(String),

    #[error("data file error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
