use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::geometry::{BoardSpec, Placement};
use crate::solver::{enumerate_solutions, SearchOptions, Status};

/// Result of a search for pairwise-disjoint `(n, 2)` solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Superimposable {
    pub n: usize,
    pub count: usize,
    /// `optimal` when found, `infeasible` when no such set exists, `limit`
    /// when the solution pool could not be enumerated.
    pub status: Status,
    pub solutions: Vec<Placement>,
    /// Number of enumerated `(n, 2)` solutions.
    pub pool_size: usize,
    pub nodes: u64,
}

/// Searches for `count` pairwise-disjoint full solutions on `(n, 2)`. With
/// `count = n` this is an exact cover of the board, branching on the
/// uncovered square with the fewest candidate solutions.
pub fn find_superimposable(n: usize, count: usize, opts: &SearchOptions) -> Result<Superimposable> {
    if count > n {
        return Err(Error::InvalidArgument(format!("at most {n} disjoint solutions fit on ({n},2)")));
    }
    let board = BoardSpec::new(n, 2)?;
    let mut pool = Vec::new();
    let res = enumerate_solutions(board, n, opts, |p| {
        pool.push(p);
        true
    })?;
    let mut out = Superimposable { n, count, status: Status::Limit, solutions: Vec::new(), pool_size: pool.len(), nodes: 0 };
    if res.status == Status::Limit {
        return Ok(out);
    }
    let len = board.num_squares();
    let rows: Vec<Bitset> = pool.iter().map(|p| Bitset::from_indices(len, p.indices())).collect();
    let mut by_square = vec![Vec::new(); len];
    for (r, p) in pool.iter().enumerate() {
        for i in p.indices() {
            by_square[i].push(r);
        }
    }
    let mut s = Cover { rows: &rows, by_square: &by_square, chosen: Vec::new(), nodes: 0 };
    let found = if count == n { s.exact(&mut Bitset::new(len)) } else { s.packing(&Bitset::new(len), 0, count) };
    out.nodes = s.nodes;
    if found {
        out.status = Status::Optimal;
        out.solutions = s.chosen.iter().map(|&r| pool[r].clone()).collect();
    } else {
        out.status = Status::Infeasible;
    }
    Ok(out)
}

struct Cover<'a> {
    rows: &'a [Bitset],
    by_square: &'a [Vec<usize>],
    chosen: Vec<usize>,
    nodes: u64,
}

impl Cover<'_> {
    fn exact(&mut self, covered: &mut Bitset) -> bool {
        self.nodes += 1;
        let mut best: Option<(usize, usize)> = None;
        for sq in 0..self.by_square.len() {
            if covered.contains(sq) {
                continue;
            }
            let c = self.by_square[sq].iter().filter(|&&r| !self.rows[r].intersects(covered)).count();
            if best.is_none_or(|(_, b)| c < b) {
                best = Some((sq, c));
                if c == 0 {
                    break;
                }
            }
        }
        let Some((sq, _)) = best else { return true };
        for &r in &self.by_square[sq] {
            if self.rows[r].intersects(covered) {
                continue;
            }
            covered.union_with(&self.rows[r]);
            self.chosen.push(r);
            if self.exact(covered) {
                return true;
            }
            self.chosen.pop();
            covered.difference_with(&self.rows[r]);
        }
        false
    }

    fn packing(&mut self, covered: &Bitset, from: usize, need: usize) -> bool {
        self.nodes += 1;
        if need == 0 {
            return true;
        }
        let free: Vec<usize> = (from..self.rows.len()).filter(|&r| !self.rows[r].intersects(covered)).collect();
        if free.len() < need {
            return false;
        }
        for &r in &free {
            let mut next = covered.clone();
            next.union_with(&self.rows[r]);
            self.chosen.push(r);
            if self.packing(&next, r + 1, need - 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}
