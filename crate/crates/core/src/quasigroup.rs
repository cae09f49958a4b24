use std::fmt;

use crate::error::{Axis, Error, Result};
use crate::perm::Perm;
use crate::s3::S3Elem;

/// Which of the three nuclei of a quasigroup is meant.
///
/// Each kind pins a different argument slot of an isostrophism triple to the
/// identity: left pins slot 1, right pins slot 0, middle pins slot 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NucleusKind {
    Left,
    Right,
    Middle,
}

pub const ALL_KINDS: [NucleusKind; 3] = [
    NucleusKind::Left,
    NucleusKind::Right,
    NucleusKind::Middle,
];

impl NucleusKind {
    /// The triple slot forced to the identity for members of this nucleus.
    pub fn identity_slot(self) -> usize {
        match self {
            NucleusKind::Left => 1,
            NucleusKind::Right => 0,
            NucleusKind::Middle => 2,
        }
    }

    /// Inverse of [`identity_slot`](NucleusKind::identity_slot).
    pub fn of_identity_slot(slot: usize) -> NucleusKind {
        match slot {
            0 => NucleusKind::Right,
            1 => NucleusKind::Left,
            2 => NucleusKind::Middle,
            _ => panic!("slot {slot} out of range"),
        }
    }

    pub fn literal(self) -> &'static str {
        match self {
            NucleusKind::Left => "l",
            NucleusKind::Right => "r",
            NucleusKind::Middle => "m",
        }
    }

    pub fn parse_literal(s: &str) -> Result<NucleusKind> {
        match s.trim() {
            "l" | "left" => Ok(NucleusKind::Left),
            "r" | "right" => Ok(NucleusKind::Right),
            "m" | "middle" => Ok(NucleusKind::Middle),
            other => Err(Error::Syntax(format!(
                "unknown nucleus kind {other:?} (expected l, r or m)"
            ))),
        }
    }
}

impl fmt::Display for NucleusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

/// A finite quasigroup on `{0, ..., n-1}`, stored as its Cayley table in
/// row-major order: `cells[x * n + y]` is `x * y`.
///
/// Construction validates the Latin-square property, so every value of this
/// type really is a quasigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasigroup {
    order: usize,
    cells: Vec<usize>,
}

impl Quasigroup {
    /// Build from explicit rows, checking shape and the Latin-square property.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Quasigroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Syntax("empty table".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Syntax(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::Syntax(format!(
                        "symbol {x} out of range for order {n}"
                    )));
                }
                cells.push(x);
            }
        }
        let q = Quasigroup { order: n, cells };
        q.check_latin()?;
        Ok(q)
    }

    fn check_latin(&self) -> Result<()> {
        let n = self.order;
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = self.get(i, j);
                if seen[x] {
                    return Err(Error::NotLatin {
                        axis: Axis::Row,
                        index: i,
                    });
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let x = self.get(i, j);
                if seen[x] {
                    return Err(Error::NotLatin {
                        axis: Axis::Column,
                        index: j,
                    });
                }
                seen[x] = true;
            }
        }
        Ok(())
    }

    /// Parse the text format: one row per line, whitespace-separated symbols,
    /// `#` starts a comment, blank lines ignored.
    pub fn parse(text: &str) -> Result<Quasigroup> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Syntax(format!("bad table token {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Quasigroup::from_rows(rows)
    }

    /// The cyclic group of order `n` (addition modulo `n`).
    pub fn cyclic(n: usize) -> Quasigroup {
        let cells = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x + y) % n))
            .collect();
        Quasigroup { order: n, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The product `x * y`.
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y]
    }

    /// Left translation `L_a: x -> a * x`.
    pub fn left_translation(&self, a: usize) -> Perm {
        let row = &self.cells[a * self.order..(a + 1) * self.order];
        Perm::from_images(row.to_vec()).expect("rows of a Latin square are permutations")
    }

    /// Right translation `R_a: x -> x * a`.
    pub fn right_translation(&self, a: usize) -> Perm {
        let images = (0..self.order).map(|x| self.get(x, a)).collect();
        Perm::from_images(images).expect("columns of a Latin square are permutations")
    }

    /// Middle translation `P_c: x -> y` where `x * y = c`.
    pub fn middle_translation(&self, c: usize) -> Perm {
        let images = (0..self.order)
            .map(|x| self.left_translation(x).inverse().apply(c))
            .collect();
        Perm::from_images(images).expect("middle translations of a quasigroup are permutations")
    }

    /// The translation family associated with each nucleus kind:
    /// left translations for the left nucleus, right for the right,
    /// middle for the middle.
    pub fn translation(&self, kind: NucleusKind, a: usize) -> Perm {
        match kind {
            NucleusKind::Left => self.left_translation(a),
            NucleusKind::Right => self.right_translation(a),
            NucleusKind::Middle => self.middle_translation(a),
        }
    }

    /// The `sigma`-parastrophe: the quasigroup whose defining triples are
    /// those of `self` with slots permuted, `v_i = w_{sigma(i)}`.
    ///
    /// Composition runs left factor first: the `(s t)`-parastrophe equals the
    /// `t`-parastrophe of the `s`-parastrophe.
    pub fn parastrophe(&self, sigma: S3Elem) -> Quasigroup {
        let n = self.order;
        let mut cells = vec![usize::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                let w = [x, y, self.get(x, y)];
                let v = [
                    w[sigma.apply(0)],
                    w[sigma.apply(1)],
                    w[sigma.apply(2)],
                ];
                debug_assert_eq!(cells[v[0] * n + v[1]], usize::MAX);
                cells[v[0] * n + v[1]] = v[2];
            }
        }
        debug_assert!(cells.iter().all(|&c| c != usize::MAX));
        Quasigroup { order: n, cells }
    }

    /// Elementwise nucleus in the classical sense: the set of elements that
    /// associate in the given position with all pairs.
    pub fn garrison_nucleus(&self, kind: NucleusKind) -> Vec<usize> {
        let n = self.order;
        (0..n)
            .filter(|&a| {
                (0..n).all(|x| {
                    (0..n).all(|y| match kind {
                        NucleusKind::Left => {
                            self.get(self.get(a, x), y) == self.get(a, self.get(x, y))
                        }
                        NucleusKind::Middle => {
                            self.get(self.get(x, a), y) == self.get(x, self.get(a, y))
                        }
                        NucleusKind::Right => {
                            self.get(self.get(x, y), a) == self.get(x, self.get(y, a))
                        }
                    })
                })
            })
            .collect()
    }

    /// The unique left identity, if one exists (`e * x = x` for all `x`).
    pub fn left_identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| self.left_translation(e).is_identity())
    }

    /// The unique right identity, if one exists (`x * e = x` for all `x`).
    pub fn right_identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| self.right_translation(e).is_identity())
    }

    /// Two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        match (self.left_identity(), self.right_identity()) {
            (Some(l), Some(r)) if l == r => Some(l),
            _ => None,
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (x + 1..n).all(|y| self.get(x, y) == self.get(y, x)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| self.get(self.get(x, y), z) == self.get(x, self.get(y, z)))
            })
        })
    }

    /// A group is an associative quasigroup with a two-sided identity
    /// (for finite quasigroups associativity alone suffices, but the
    /// identity check is cheap and makes the intent plain).
    pub fn is_group(&self) -> bool {
        self.identity().is_some() && self.is_associative()
    }
}

impl fmt::Display for Quasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 0..self.order {
            for y in 0..self.order {
                if y > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(x, y))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::s3::ALL_S3;

    fn q4prime() -> Quasigroup {
        Quasigroup::from_rows(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![3, 2, 1, 0],
            vec![2, 3, 0, 1],
        ])
        .unwrap()
    }

    #[test]
    fn parse_skips_comments_and_round_trips() {
        let text = "# a small square\n0 1 2\n1 2 0  # shifted\n\n2 0 1\n";
        let q = Quasigroup::parse(text).unwrap();
        assert_eq!(q, Quasigroup::cyclic(3));
        assert_eq!(Quasigroup::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn rejects_non_latin_tables() {
        let row_bad = Quasigroup::from_rows(vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(
            row_bad,
            Err(Error::NotLatin {
                axis: Axis::Row,
                index: 0
            })
        );
        let col_bad = Quasigroup::from_rows(vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(
            col_bad,
            Err(Error::NotLatin {
                axis: Axis::Column,
                index: 0
            })
        );
        assert!(Quasigroup::from_rows(vec![vec![0, 1], vec![1]]).is_err());
        assert!(Quasigroup::from_rows(vec![vec![0, 2], vec![2, 0]]).is_err());
    }

    #[test]
    fn translations_act_as_defined() {
        let q = Quasigroup::cyclic(5);
        for a in 0..5 {
            for x in 0..5 {
                assert_eq!(q.left_translation(a).apply(x), q.get(a, x));
                assert_eq!(q.right_translation(a).apply(x), q.get(x, a));
                // x * P_c(x) = c
                assert_eq!(q.get(x, q.middle_translation(a).apply(x)), a);
            }
        }
        let q = q4prime();
        for c in 0..4 {
            for x in 0..4 {
                assert_eq!(q.get(x, q.middle_translation(c).apply(x)), c);
            }
        }
    }

    #[test]
    fn parastrophes_compose_left_factor_first() {
        // The (s t)-parastrophe is the t-parastrophe of the s-parastrophe,
        // checked on all 36 pairs.
        let q = Quasigroup::cyclic(3);
        for s in ALL_S3 {
            for t in ALL_S3 {
                assert_eq!(
                    q.parastrophe(s.compose(t)),
                    q.parastrophe(s).parastrophe(t),
                    "sigma={s} tau={t}"
                );
            }
        }
    }

    #[test]
    fn parastrophe_13_is_left_division() {
        // In the (13)-parastrophe, z o y = x exactly when x * y = z.
        let q = q4prime();
        let p = q.parastrophe(S3Elem::S13);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(p.get(q.get(x, y), y), x);
            }
        }
    }

    #[test]
    fn garrison_nuclei_of_small_examples() {
        let q = q4prime();
        assert_eq!(q.garrison_nucleus(NucleusKind::Left), vec![0, 1]);
        assert_eq!(q.garrison_nucleus(NucleusKind::Right), Vec::<usize>::new());
        assert_eq!(q.garrison_nucleus(NucleusKind::Middle), Vec::<usize>::new());

        let z5 = Quasigroup::cyclic(5);
        for kind in ALL_KINDS {
            assert_eq!(z5.garrison_nucleus(kind), vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn identity_and_structure_flags() {
        let q = q4prime();
        assert_eq!(q.left_identity(), Some(0));
        assert_eq!(q.right_identity(), None);
        assert_eq!(q.identity(), None);
        assert!(!q.is_commutative());
        assert!(!q.is_group());

        let z4 = Quasigroup::cyclic(4);
        assert_eq!(z4.identity(), Some(0));
        assert!(z4.is_commutative());
        assert!(z4.is_group());
    }
}
