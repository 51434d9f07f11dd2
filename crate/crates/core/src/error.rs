use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("not bihomogeneous: {0}")]
    NotBihomogeneous(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A structural hypothesis of the algorithm does not hold for this input.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no syzygy of bidegree (0, n) for n <= {cap}")]
    NoSyzygy { cap: usize },
    /// A computed object failed its exact verification.
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("size cap exceeded: {0}")]
    TooLarge(String),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Hypothesis(_) | Error::NoSyzygy { .. } => 2,
            Error::Certificate(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
