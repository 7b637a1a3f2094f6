use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parameter mismatch: expected (n, r) = ({0}, {1}), found ({2}, {3})")]
    ParameterMismatch(u32, u32, u32, u32),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("matrix is neither upper nor lower triangular")]
    NotTriangular,
    #[error("element is not in {0}")]
    OutOfSubspace(&'static str),
    #[error("solver found a non-unique solution (rank {rank} < {columns})")]
    Underdetermined { rank: usize, columns: usize },
    #[error("no decision within window cap {0}")]
    Undecided(i64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
