use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{BoardSpec, Square};
use crate::solver::{visit_solutions, SearchOptions, Status};

/// How many size-`k` solutions place a queen on each square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityMap {
    pub board: BoardSpec,
    pub k: usize,
    /// Per-square counts in linear (lexicographic) square order.
    pub counts: Vec<u64>,
    #[serde(with = "crate::solver::big_count")]
    pub total_solutions: BigUint,
    /// Square every counted solution contains, if restricted to one class.
    pub fixed: Option<Square>,
    /// `limit` when the enumeration stopped early and the counts are partial.
    pub status: Status,
}

impl DensityMap {
    pub fn count_at(&self, sq: &Square) -> Result<u64> {
        Ok(self.counts[self.board.index_of(sq)?])
    }
}

/// Streams every size-`k` solution (those containing `fixed`, if given) and
/// accumulates per-square counts.
pub fn density_map(board: BoardSpec, k: usize, fixed: Option<&Square>, opts: &SearchOptions) -> Result<DensityMap> {
    let start = fixed.map(|sq| board.index_of(sq)).transpose()?;
    let counts: Vec<AtomicU64> = (0..board.num_squares()).map(|_| AtomicU64::new(0)).collect();
    let res = visit_solutions(board, start.as_slice(), k, opts, &|idx: &[usize]| {
        for &i in idx {
            counts[i].fetch_add(1, Ordering::Relaxed);
        }
    })?;
    let counts: Vec<u64> = counts.into_iter().map(AtomicU64::into_inner).collect();
    let total = counts.iter().sum::<u64>().checked_div(k as u64).map_or_else(|| res.count.clone().unwrap_or_default(), BigUint::from);
    Ok(DensityMap {
        board,
        k,
        counts,
        total_solutions: total,
        fixed: fixed.cloned(),
        status: if res.status == Status::Limit { Status::Limit } else { Status::Optimal },
    })
}

/// CSV text with one `n × n` block per 2D layer: rows are the first
/// coordinate, columns the second, and blocks are ordered lexicographically
/// by the remaining coordinates, each preceded by a `# x3=..,x4=..` line.
pub fn density_export(map: &DensityMap) -> String {
    let (n, d) = (map.board.n(), map.board.d());
    let block = if d >= 2 { n * n } else { n };
    let mut s = String::new();
    for (b, chunk) in (0..map.counts.len() / block).map(|b| (b, &map.counts[b * block..(b + 1) * block])) {
        if d > 2 {
            if b > 0 {
                s.push('\n');
            }
            let rest = map.board.coords_of(b * block).split_off(2);
            let label: Vec<String> = rest.iter().enumerate().map(|(i, c)| format!("x{}={c}", i + 3)).collect();
            let _ = writeln!(s, "# {}", label.join(","));
        }
        for row in chunk.chunks(n) {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BoardSymmetry;

    fn b(n: usize, d: usize) -> BoardSpec {
        BoardSpec::new(n, d).unwrap()
    }

    #[test]
    fn four_by_four() {
        let m = density_map(b(4, 2), 4, None, &SearchOptions::default()).unwrap();
        assert_eq!(m.total_solutions, BigUint::from(2u8));
        assert_eq!(m.counts, vec![0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0]);
        assert_eq!(density_export(&m), "0,1,1,0\n1,0,0,1\n1,0,0,1\n0,1,1,0\n");
    }

    #[test]
    fn sum_rule_and_symmetry() {
        for (n, d, k) in [(3, 3, 4), (4, 3, 7), (5, 2, 5), (3, 4, 6)] {
            let board = b(n, d);
            let m = density_map(board, k, None, &SearchOptions::default()).unwrap();
            assert_eq!(BigUint::from(m.counts.iter().sum::<u64>()), m.total_solutions.clone() * k);
            for g in BoardSymmetry::all(d) {
                for sq in board.squares() {
                    assert_eq!(m.count_at(&sq).unwrap(), m.count_at(&g.apply(&sq, n)).unwrap());
                }
            }
        }
    }

    #[test]
    fn class_restriction() {
        let m = density_map(b(4, 3), 7, Some(&[1, 1, 1].into()), &SearchOptions::default()).unwrap();
        assert_eq!(m.count_at(&[1, 1, 1].into()).unwrap(), u64::try_from(m.total_solutions.clone()).unwrap());
        assert!(m.count_at(&[1, 1, 2].into()).unwrap() == 0);
    }

    #[test]
    fn export_layers() {
        let m = density_map(b(3, 3), 4, None, &SearchOptions::default()).unwrap();
        let text = density_export(&m);
        assert_eq!(text.matches("# x3=").count(), 3);
        assert_eq!(text.lines().filter(|l| !l.is_empty() && !l.starts_with('#')).count(), 9);
        assert!(text.starts_with("# x3=1\n"));
        assert_eq!(text, density_export(&m.clone()));
    }
}
