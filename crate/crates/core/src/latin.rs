use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::quasigroup::Quasigroup;

/// Generate a uniformly seeded random Latin square of the given order.
///
/// Cells are filled row by row with a randomized backtracking search, so the
/// result is deterministic in `(order, seed)` and portable across platforms.
/// Not a uniform sample from all Latin squares, but varied enough to exercise
/// generic quasigroups with no special structure.
pub fn random_quasigroup(order: usize, seed: u64) -> Quasigroup {
    assert!(order > 0, "order must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = order;
    let mut cells: Vec<Option<usize>> = vec![None; n * n];
    // Candidate orderings per cell, shuffled once up front; backtracking walks
    // each list left to right.
    let choices: Vec<Vec<usize>> = (0..n * n)
        .map(|_| {
            let mut symbols: Vec<usize> = (0..n).collect();
            symbols.shuffle(&mut rng);
            symbols
        })
        .collect();

    fn fits(cells: &[Option<usize>], n: usize, pos: usize, s: usize) -> bool {
        let (r, c) = (pos / n, pos % n);
        for j in 0..n {
            if cells[r * n + j] == Some(s) {
                return false;
            }
        }
        for i in 0..n {
            if cells[i * n + c] == Some(s) {
                return false;
            }
        }
        true
    }

    // Iterative DFS over cells 0..n*n; cursors[pos] is the index into
    // choices[pos] to try next.
    let mut cursors = vec![0usize; n * n];
    let mut pos = 0;
    while pos < n * n {
        let mut placed = false;
        while cursors[pos] < n {
            let s = choices[pos][cursors[pos]];
            cursors[pos] += 1;
            if fits(&cells, n, pos, s) {
                cells[pos] = Some(s);
                placed = true;
                break;
            }
        }
        if placed {
            pos += 1;
        } else {
            cursors[pos] = 0;
            cells[pos] = None;
            assert!(pos > 0, "backtracked past the first cell");
            pos -= 1;
            cells[pos] = None;
        }
    }

    let rows: Vec<Vec<usize>> = (0..n)
        .map(|r| (0..n).map(|c| cells[r * n + c].unwrap()).collect())
        .collect();
    Quasigroup::from_rows(rows).expect("backtracking search yields a Latin square")
}

/// Every Latin square of the given order, in lexicographic cell order.
///
/// Counts grow superexponentially (1, 2, 12, 576, 161280, ...); this is
/// intended for exhaustive checks at order 4 and below.
pub fn all_latin_squares(order: usize) -> Vec<Quasigroup> {
    assert!(order > 0, "order must be positive");
    let n = order;
    let mut cells: Vec<Option<usize>> = vec![None; n * n];
    let mut out = Vec::new();

    fn fits(cells: &[Option<usize>], n: usize, pos: usize, s: usize) -> bool {
        let (r, c) = (pos / n, pos % n);
        (0..n).all(|j| cells[r * n + j] != Some(s)) && (0..n).all(|i| cells[i * n + c] != Some(s))
    }

    fn walk(cells: &mut Vec<Option<usize>>, n: usize, pos: usize, out: &mut Vec<Quasigroup>) {
        if pos == n * n {
            let rows: Vec<Vec<usize>> = (0..n)
                .map(|r| (0..n).map(|c| cells[r * n + c].unwrap()).collect())
                .collect();
            out.push(Quasigroup::from_rows(rows).expect("completed grid is Latin"));
            return;
        }
        for s in 0..n {
            if fits(cells, n, pos, s) {
                cells[pos] = Some(s);
                walk(cells, n, pos + 1, out);
                cells[pos] = None;
            }
        }
    }

    walk(&mut cells, n, 0, &mut out);
    out
}
