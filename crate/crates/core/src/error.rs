use thiserror::Error;

use crate::lattice::Cell;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice size must be an odd integer >= 5, got {0}")]
    InvalidModulus(i64),

    #[error("the horizontal move vector needs n >= 3, got n = {0}")]
    HorizontalMoveUndefined(u32),

    #[error("only the Lee sphere of radius 1 is supported, got radius {0}")]
    UnsupportedRadius(u32),

    #[error("invalid polyomino: {0}")]
    InvalidShape(String),

    #[error("shape file line {line}: {message}")]
    ShapeParse { line: usize, message: String },

    #[error("shape has {area} cells but a fundamental region of the {q}x{q} lattice needs {q}")]
    WrongArea { area: usize, q: u32 },

    #[error("cells {0} and {1} differ by a codeword, so the shape is not a fundamental region")]
    SameCoset(Cell, Cell),

    #[error("exhaustive burst enumeration is limited to q <= {max}, got {q}")]
    ExhaustiveTooLarge { q: u32, max: u32 },

    #[error("number of trials must be at least 1")]
    ZeroTrials,

    #[error("invalid q range {input:?}: {message}")]
    InvalidRange { input: String, message: String },

    #[error("invalid permutation file: {0}")]
    InvalidPermutation(String),
}
