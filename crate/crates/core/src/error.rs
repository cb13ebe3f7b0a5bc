use thiserror::Error;

use crate::geometry::Square;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid board: n={n}, d={d} (both must be at least 1)")]
    InvalidBoard { n: usize, d: usize },

    #[error("board ({n},{d}) has more than 2^24 squares")]
    BoardTooLarge { n: usize, d: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("square {square} does not fit a board of size {n}")]
    OutOfBoard { square: Square, n: usize },

    #[error("duplicate square {0} in placement")]
    DuplicateSquare(Square),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no construction exists: {0}")]
    NoConstruction(String),

    #[error("inadmissible coefficients: {value} = e·(1, c) for e = {witness:?} shares a factor with n = {n}")]
    Inadmissible { n: usize, witness: Vec<i64>, value: i64 },

    #[error("placement is not valid: {0} conflicting pair(s)")]
    InvalidPlacement(usize),

    #[error("construction produced an invalid placement ({0}); this is a bug")]
    ConstructionFailed(String),

    #[error("no known |Qmax({n},{d})| value in the table")]
    MissingTableEntry { n: usize, d: usize },

    #[error("board too large for exhaustive search: {0} squares")]
    SearchTooLarge(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
