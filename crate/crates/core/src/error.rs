use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("simplices {first} and {second} overlap in a set of positive volume")]
    OverlappingSimplices { first: usize, second: usize },

    #[error("lattice basis is not invertible")]
    NonInvertibleBasis,

    #[error("matrix has non-integer entries")]
    NonIntegerMatrix,

    #[error("{what} out of range: {value} not in [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("not equidecomposable: {0}")]
    NotEquidecomposable(String),

    #[error("not a level-zero tiler: {0}")]
    NotZeroTiler(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Prefixes the location of a parse or dimension error.
    pub fn at(self, path: impl std::fmt::Display) -> Error {
        match self {
            Error::Parse { path: p, msg } if p.is_empty() => Error::Parse {
                path: path.to_string(),
                msg,
            },
            Error::Parse { path: p, msg } => Error::Parse {
                path: format!("{path}{p}"),
                msg,
            },
            Error::DimensionMismatch { expected, found } => Error::Parse {
                path: path.to_string(),
                msg: format!("dimension mismatch: expected {expected}, found {found}"),
            },
            other => other,
        }
    }
}
