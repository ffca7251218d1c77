use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("order bound {0} exceeded during closure")]
    OrderBound(usize),
    #[error("matrix bound {0} exceeded; use character-only mode")]
    MatrixBound(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cocycle identity fails at triple ({0}, {1}, {2})")]
    CocycleWitness(usize, usize, usize),
    #[error("connecting maps do not compose at (g'={0}, g={1}, x={2})")]
    CompositionWitness(usize, usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::NotSupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
