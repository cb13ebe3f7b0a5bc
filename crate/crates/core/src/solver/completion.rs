use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::engine::Engine;
use super::{decide_from, enumerate_solutions, max_partial, SearchOptions, Status};
use crate::error::Result;
use crate::geometry::symmetry::canonical_indices;
use crate::geometry::{BoardSpec, BoardSymmetry, Placement};

/// Largest symmetry group used for canonical forms, times the board size.
const MAX_MAP_ENTRIES: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    /// `optimal` when `qc` is exact, `limit` when it is only a lower bound.
    pub status: Status,
    pub qc: usize,
    pub qmax: usize,
    /// A placement of size `qc + 1` that does not extend to a maximum one.
    pub counterexample: Option<Placement>,
    /// Distinct placements (up to symmetry) tested for completion.
    pub checked: u64,
    pub nodes: u64,
}

/// The completion threshold: the largest `t` such that every valid placement
/// of at most `t` queens extends to a maximum placement. Placements of size
/// `|Qmax|` are maximum already, so the value never exceeds `|Qmax|`.
pub fn completion_threshold(board: BoardSpec, opts: &SearchOptions) -> Result<ThresholdResult> {
    opts.validate()?;
    let max = max_partial(board, opts)?;
    let qmax = max.best_size;
    let mut result = ThresholdResult { status: Status::Limit, qc: 0, qmax, counterexample: None, checked: 0, nodes: max.nodes };
    if max.status != Status::Optimal {
        return Ok(result);
    }
    let eng = Engine::new(board, opts.modular)?;
    let maps = symmetry_maps(board);
    let limits = opts.limits();
    let plain = SearchOptions { symmetry_reduction: false, ..opts.clone() };
    for t in 1..qmax {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut failed: Option<Option<Placement>> = None;
        let sweep = enumerate_solutions(board, t, &plain, |p| {
            let idx = p.indices();
            if !seen.insert(canonical_indices(&idx, &maps)) {
                return true;
            }
            result.checked += 1;
            let out = decide_from(&eng, &idx, qmax, &plain, limits);
            result.nodes += out.nodes;
            if out.found.is_some() {
                return true;
            }
            failed = Some(out.complete.then_some(p));
            false
        })?;
        result.nodes += sweep.nodes;
        match failed {
            Some(Some(p)) => {
                result.status = Status::Optimal;
                result.counterexample = Some(p);
                return Ok(result);
            }
            Some(None) => return Ok(result),
            None if sweep.status == Status::Limit => return Ok(result),
            None => result.qc = t,
        }
    }
    result.qc = qmax;
    result.status = Status::Optimal;
    Ok(result)
}

fn symmetry_maps(board: BoardSpec) -> Vec<Vec<usize>> {
    let d = board.d();
    let group: usize = (1..=d).product::<usize>() << d;
    if d > 8 || group.saturating_mul(board.num_squares()) > MAX_MAP_ENTRIES {
        return vec![BoardSymmetry::identity(d).index_map(board)];
    }
    BoardSymmetry::all(d).iter().map(|s| s.index_map(board)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qc(n: usize, d: usize) -> ThresholdResult {
        let r = completion_threshold(BoardSpec::new(n, d).unwrap(), &SearchOptions::default()).unwrap();
        assert_eq!(r.status, Status::Optimal);
        r
    }

    #[test]
    fn small_thresholds() {
        assert_eq!(qc(1, 3).qc, 1);
        assert_eq!(qc(2, 5).qc, 1);
        assert_eq!(qc(3, 3).qc, 0);
        // every non-attacking pair on (4,3) lies in one of the 1344 maximum placements
        assert_eq!(qc(4, 3).qc, 2);
    }

    #[test]
    fn counterexample_does_not_extend() {
        let r = qc(3, 3);
        let p = r.counterexample.unwrap();
        assert_eq!(p.len(), 1);
        let board = p.board();
        let out = super::super::complete(board, &p, r.qmax, &SearchOptions::default()).unwrap();
        assert_eq!(out.status, Status::Infeasible);
    }
}
