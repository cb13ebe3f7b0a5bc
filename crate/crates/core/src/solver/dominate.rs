use std::time::Instant;

use super::enumerate::Lex;
use super::{SearchOptions, SolveResult, Status};
use crate::bitset::Bitset;
use crate::error::Result;
use crate::geometry::{BoardSpec, Placement};

/// Smallest set of queens that occupies or attacks every square.
///
/// Iterative deepening over the size, branching on the undominated square
/// with the fewest dominators.
pub fn min_domination(board: BoardSpec, opts: &SearchOptions) -> Result<SolveResult> {
    opts.validate()?;
    let lex = Lex::new(board, opts.modular)?;
    let limits = opts.limits();
    let greedy = greedy_cover(&lex);
    let mut search = Search { lex: &lex, chosen: Vec::new(), nodes: 0, node_limit: limits.node_limit, deadline: limits.deadline, stopped: false };
    let mut best = greedy;
    let mut status = Status::Optimal;
    for k in 1..best.len() {
        search.chosen.clear();
        if search.rec(&Bitset::full(lex.len), k) {
            best = search.chosen.clone();
            break;
        }
        if search.stopped {
            status = Status::Limit;
            break;
        }
    }
    best.sort_unstable();
    let witness = Placement::from_indices(board, &best);
    Ok(SolveResult { status, best_size: best.len(), count: None, witness: Some(witness), nodes: search.nodes })
}

fn greedy_cover(lex: &Lex) -> Vec<usize> {
    let mut open = Bitset::full(lex.len);
    let mut chosen = Vec::new();
    while !open.is_empty() {
        let q = (0..lex.len).max_by_key(|&q| (open.intersection_count(&lex.nbr[q]), std::cmp::Reverse(q))).expect("nonempty");
        open.difference_with(&lex.nbr[q]);
        chosen.push(q);
    }
    chosen
}

struct Search<'a> {
    lex: &'a Lex,
    chosen: Vec<usize>,
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    stopped: bool,
}

impl Search<'_> {
    fn rec(&mut self, open: &Bitset, left: usize) -> bool {
        if open.is_empty() {
            return true;
        }
        self.nodes += 1;
        if self.nodes & 255 == 0
            && (self.node_limit.is_some_and(|l| self.nodes > l) || self.deadline.is_some_and(|t| Instant::now() >= t))
        {
            self.stopped = true;
        }
        if left == 0 || self.stopped {
            return false;
        }
        let gains: Vec<usize> = self.lex.nbr.iter().map(|nb| open.intersection_count(nb)).collect();
        let best_gain = gains.iter().copied().max().unwrap_or(0);
        if best_gain * left < open.count() {
            return false;
        }
        let target = open
            .iter()
            .min_by_key(|&s| (self.lex.nbr[s].count(), s))
            .expect("nonempty");
        let mut options: Vec<usize> = self.lex.nbr[target].iter().collect();
        options.sort_by_key(|&q| (std::cmp::Reverse(gains[q]), q));
        let mut next = Bitset::new(self.lex.len);
        for q in options {
            next.assign_difference(open, &self.lex.nbr[q]);
            self.chosen.push(q);
            if self.rec(&next, left - 1) {
                return true;
            }
            self.chosen.pop();
            if self.stopped {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(n: usize, d: usize) -> usize {
        let r = min_domination(BoardSpec::new(n, d).unwrap(), &SearchOptions::default()).unwrap();
        assert_eq!(r.status, Status::Optimal);
        r.best_size
    }

    #[test]
    fn planar_domination_numbers() {
        let known = [1, 1, 1, 2, 3, 3, 4, 5, 5];
        for (i, &g) in known.iter().enumerate() {
            assert_eq!(dom(i + 1, 2), g, "n = {}", i + 1);
        }
    }

    #[test]
    fn witnesses_dominate() {
        let board = BoardSpec::new(4, 3).unwrap();
        let r = min_domination(board, &SearchOptions::default()).unwrap();
        let w = r.witness.unwrap();
        for s in board.squares() {
            assert!(w.queens().iter().any(|q| q == &s || crate::geometry::attacks(q, &s, board).unwrap()));
        }
    }
}
