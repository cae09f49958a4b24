use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, 1, ..., n-1}`, stored as its image list:
/// `images[i]` is where `i` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Identity permutation on `n` points.
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Build from an image list, checking it is a bijection on `0..len`.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::Syntax(format!(
                    "permutation image {x} out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(Error::Syntax(format!(
                    "permutation image {x} repeated"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// Product `self * other`, acting as `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    /// Build from images known to form a bijection, e.g. values read off an
    /// existing permutation; verified only when debug assertions are on.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Perm {
        debug_assert!(
            images.len() > 64
                || images
                    .iter()
                    .fold(0u64, |m, &x| if x < 64 { m | 1 << x } else { m })
                    .count_ones() as usize
                    == images.len(),
            "images do not form a permutation"
        );
        Perm { images }
    }

    /// Same as [`compose`](Perm::compose) but assumes equal degrees.
    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// `self^k` for `k >= 0` by repeated multiplication.
    pub fn power(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k {
            acc = self.compose_unchecked(&acc);
        }
        acc
    }

    /// Multiplicative order: least `k >= 1` with `self^k = identity`.
    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.compose_unchecked(&acc);
            k += 1;
        }
        k
    }

    /// Parse the literal form `"2,0,1"`: comma-separated images.
    pub fn parse_literal(s: &str) -> Result<Perm> {
        let images = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Syntax(format!("bad permutation token {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if images.is_empty() {
            return Err(Error::Syntax("empty permutation literal".into()));
        }
        Perm::from_images(images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &x in &self.images {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

/// Iterate all `n!` permutations of degree `n` in lexicographic order of
/// their image lists.
pub fn all_perms(n: usize) -> AllPerms {
    AllPerms {
        next: Some(Perm::identity(n)),
    }
}

pub struct AllPerms {
    next: Option<Perm>,
}

impl Iterator for AllPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let current = self.next.take()?;
        let mut images = current.images.clone();
        if next_lex(&mut images) {
            self.next = Some(Perm { images });
        }
        Some(current)
    }
}

/// Advance `images` to its lexicographic successor in place.
/// Returns false when `images` was already the last arrangement.
fn next_lex(images: &mut [usize]) -> bool {
    let n = images.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && images[i - 1] >= images[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let pivot = i - 1;
    let mut j = n - 1;
    while images[j] <= images[pivot] {
        j -= 1;
    }
    images.swap(pivot, j);
    images[i..].reverse();
    true
}

/// The `k`-th permutation of degree `n` in lexicographic order
/// (`k` in `0..n!`), via the factorial number system.
pub fn nth_perm(n: usize, mut k: usize) -> Perm {
    let mut factorials = vec![1usize; n];
    for i in 1..n {
        factorials[i] = factorials[i - 1] * i;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    let mut images = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorials[i];
        let idx = k / f;
        k %= f;
        images.push(pool.remove(idx));
    }
    Perm { images }
}

/// `n!` as usize; callers guard `n` so this never overflows in practice.
pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
