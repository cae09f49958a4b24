use std::fmt;

/// Which axis of a Cayley table failed the Latin-square check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Column => write!(f, "column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed input: bad token, out-of-range symbol, wrong row count or length.
    #[error("syntax error: {0}")]
    Syntax(String),

    /// The table is not a Latin square: the given row or column repeats a symbol.
    #[error("not a Latin square: {axis} {index} repeats a symbol")]
    NotLatin { axis: Axis, index: usize },

    /// Two objects that must act on the same set have different degrees.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// An exhaustive search was requested beyond its bound.
    #[error("order {order} exceeds the search bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },

    /// An operation required an autostrophism but the argument is not one.
    #[error("not an autostrophism of this quasigroup")]
    NotAutostrophism,

    /// An internal consistency check failed; indicates a bug.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
