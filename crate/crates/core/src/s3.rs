use std::fmt;

use crate::error::{Error, Result};

/// An element of the symmetric group on the three argument slots of a
/// quasigroup identity `x * y = z` (slots 0, 1, 2).
///
/// Names use the customary 1-based cycle notation: `S13` swaps slots 0 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum S3Elem {
    E,
    S12,
    S13,
    S23,
    S123,
    S132,
}

pub const ALL_S3: [S3Elem; 6] = [
    S3Elem::E,
    S3Elem::S12,
    S3Elem::S13,
    S3Elem::S23,
    S3Elem::S123,
    S3Elem::S132,
];

impl S3Elem {
    /// Image list over slots `0..3`: `images()[i]` is where slot `i` goes.
    pub fn images(self) -> [usize; 3] {
        match self {
            S3Elem::E => [0, 1, 2],
            S3Elem::S12 => [1, 0, 2],
            S3Elem::S13 => [2, 1, 0],
            S3Elem::S23 => [0, 2, 1],
            // 1-based cycle (1 2 3): slot 0 -> 1 -> 2 -> 0.
            S3Elem::S123 => [1, 2, 0],
            S3Elem::S132 => [2, 0, 1],
        }
    }

    pub fn apply(self, slot: usize) -> usize {
        self.images()[slot]
    }

    /// Product `self * other`, acting as `slot -> self(other(slot))`.
    pub fn compose(self, other: S3Elem) -> S3Elem {
        COMPOSE[self as usize][other as usize]
    }

    pub fn inverse(self) -> S3Elem {
        INVERSE[self as usize]
    }

    pub fn is_identity(self) -> bool {
        self == S3Elem::E
    }

    /// The literal used in files and on the command line.
    pub fn literal(self) -> &'static str {
        match self {
            S3Elem::E => "e",
            S3Elem::S12 => "12",
            S3Elem::S13 => "13",
            S3Elem::S23 => "23",
            S3Elem::S123 => "123",
            S3Elem::S132 => "132",
        }
    }

    pub fn parse_literal(s: &str) -> Result<S3Elem> {
        match s.trim() {
            "e" => Ok(S3Elem::E),
            "12" => Ok(S3Elem::S12),
            "13" => Ok(S3Elem::S13),
            "23" => Ok(S3Elem::S23),
            "123" => Ok(S3Elem::S123),
            "132" => Ok(S3Elem::S132),
            other => Err(Error::Syntax(format!(
                "unknown slot permutation {other:?} (expected e, 12, 13, 23, 123 or 132)"
            ))),
        }
    }
}

impl fmt::Display for S3Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

/// Multiplication table, rows indexed by the left factor; validated
/// pointwise against [`S3Elem::images`] in the tests below.
const COMPOSE: [[S3Elem; 6]; 6] = {
    use S3Elem::*;
    [
        [E, S12, S13, S23, S123, S132],
        [S12, E, S132, S123, S23, S13],
        [S13, S123, E, S132, S12, S23],
        [S23, S132, S123, E, S13, S12],
        [S123, S13, S23, S12, S132, E],
        [S132, S23, S12, S13, E, S123],
    ]
};

const INVERSE: [S3Elem; 6] = {
    use S3Elem::*;
    [E, S12, S13, S23, S132, S123]
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_table_is_correct_pointwise() {
        // (st)(i) = s(t(i)) for every pair, checked slot by slot.
        for s in ALL_S3 {
            for t in ALL_S3 {
                let st = s.compose(t);
                for i in 0..3 {
                    assert_eq!(st.apply(i), s.apply(t.apply(i)), "({s} * {t})({i})");
                }
            }
        }
    }

    #[test]
    fn inverses_cancel() {
        for s in ALL_S3 {
            assert_eq!(s.compose(s.inverse()), S3Elem::E);
            assert_eq!(s.inverse().compose(s), S3Elem::E);
        }
    }

    #[test]
    fn sample_products() {
        // (12)(13): first send slot by (13), then by (12).
        // 0 -> 2 -> 2, 1 -> 1 -> 0, 2 -> 0 -> 1, i.e. the cycle (1 3 2).
        assert_eq!(S3Elem::S12.compose(S3Elem::S13), S3Elem::S132);
        assert_eq!(S3Elem::S13.compose(S3Elem::S12), S3Elem::S123);
        assert_eq!(S3Elem::S123.compose(S3Elem::S123), S3Elem::S132);
    }

    #[test]
    fn literal_round_trip() {
        for s in ALL_S3 {
            assert_eq!(S3Elem::parse_literal(s.literal()).unwrap(), s);
        }
        assert!(S3Elem::parse_literal("21").is_err());
    }
}
