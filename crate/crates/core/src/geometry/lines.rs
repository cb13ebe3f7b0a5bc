use super::{attack_directions, BoardSpec, Direction, Square};
use crate::error::{Error, Result};

/// Attack lines grouped by direction: every maximal collinear set of at least
/// two squares, ordered by direction and then by anchor (the line's
/// lexicographically smallest square).
pub type AttackLines = Vec<(Direction, Vec<Vec<Square>>)>;

pub fn attack_lines(board: BoardSpec) -> AttackLines {
    let index = LineIndex::new(board, false, attack_directions(board.d()));
    index
        .dirs
        .iter()
        .enumerate()
        .map(|(k, dir)| {
            let lines = index
                .lines_of_dir(k)
                .filter(|l| l.len() >= 2)
                .map(|l| l.iter().map(|&i| Square(board.coords_of(i as usize))).collect())
                .collect();
            (dir.clone(), lines)
        })
        .collect()
}

/// The `idx`-th layer in dimension `dim` (both 1-based): every square whose
/// coordinate `dim` equals `idx`.
pub fn layer(board: BoardSpec, dim: usize, idx: usize) -> Result<Vec<Square>> {
    if dim == 0 || dim > board.d() {
        return Err(Error::OutOfRange(format!("layer dimension {dim} on a {}-dimensional board", board.d())));
    }
    if idx == 0 || idx > board.n() {
        return Err(Error::OutOfRange(format!("layer index {idx} on a board of size {}", board.n())));
    }
    Ok(board.squares().filter(|s| s.coords()[dim - 1] == idx).collect())
}

/// Partition of the board into lines, one partition per direction, including
/// lines of a single square. With `modular` set the lines wrap around (each
/// then holds exactly `n` squares).
#[derive(Clone, Debug)]
pub(crate) struct LineIndex {
    pub dirs: Vec<Direction>,
    /// `line_of[k][sq]`: global id of the line through `sq` in direction `k`.
    pub line_of: Vec<Vec<u32>>,
    /// Squares of each line, ascending.
    pub lines: Vec<Vec<u32>>,
    pub dir_start: Vec<usize>,
}

impl LineIndex {
    pub fn new(board: BoardSpec, modular: bool, dirs: Vec<Direction>) -> Self {
        let total = board.num_squares();
        let n = board.n() as i64;
        let mut line_of = Vec::with_capacity(dirs.len());
        let mut lines: Vec<Vec<u32>> = Vec::new();
        let mut dir_start = Vec::with_capacity(dirs.len() + 1);
        for dir in &dirs {
            dir_start.push(lines.len());
            let mut of = vec![u32::MAX; total];
            for s in 0..total {
                if of[s] != u32::MAX {
                    continue;
                }
                let start = board.coords_of(s);
                let id = lines.len() as u32;
                let mut members = Vec::new();
                let mut cur: Vec<i64> = start.iter().map(|&c| c as i64).collect();
                loop {
                    let coords: Vec<usize> = cur.iter().map(|&c| c as usize).collect();
                    let i = board.index_unchecked(&coords);
                    if of[i] != u32::MAX {
                        break;
                    }
                    of[i] = id;
                    members.push(i as u32);
                    let mut inside = true;
                    for (c, &e) in cur.iter_mut().zip(dir.eps()) {
                        *c += e as i64;
                        if modular {
                            *c = (*c - 1).rem_euclid(n) + 1;
                        } else if *c < 1 || *c > n {
                            inside = false;
                        }
                    }
                    if !inside {
                        break;
                    }
                }
                // without wrap-around the first unassigned square in index order
                // is the line's start, since stepping back by a canonical ε
                // lowers the lexicographic rank
                members.sort_unstable();
                lines.push(members);
            }
            line_of.push(of);
        }
        dir_start.push(lines.len());
        LineIndex { dirs, line_of, lines, dir_start }
    }

    pub fn lines_of_dir(&self, k: usize) -> impl Iterator<Item = &Vec<u32>> {
        self.lines[self.dir_start[k]..self.dir_start[k + 1]].iter()
    }

    pub fn num_lines_of_dir(&self, k: usize) -> usize {
        self.dir_start[k + 1] - self.dir_start[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_lines(n: usize, d: usize) -> usize {
        attack_lines(BoardSpec::new(n, d).unwrap()).iter().map(|(_, l)| l.len()).sum()
    }

    #[test]
    fn line_counts() {
        assert_eq!(count_lines(8, 2), 42);
        assert_eq!(count_lines(2, 2), 6);
        for d in 1..=4 {
            assert_eq!(count_lines(1, d), 0);
        }
    }

    #[test]
    fn lines_are_ordered_by_anchor() {
        for (dir, lines) in attack_lines(BoardSpec::new(5, 3).unwrap()) {
            let anchors: Vec<_> = lines.iter().map(|l| l[0].clone()).collect();
            let mut sorted = anchors.clone();
            sorted.sort();
            assert_eq!(anchors, sorted, "direction {dir:?}");
            for l in &lines {
                assert!(l.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn every_direction_partitions_the_board() {
        for modular in [false, true] {
            let board = BoardSpec::new(4, 3).unwrap();
            let idx = LineIndex::new(board, modular, attack_directions(3));
            for k in 0..idx.dirs.len() {
                let total: usize = idx.lines_of_dir(k).map(|l| l.len()).sum();
                assert_eq!(total, 64);
                if modular {
                    assert!(idx.lines_of_dir(k).all(|l| l.len() == 4));
                }
            }
        }
    }

    #[test]
    fn layers() {
        let b = BoardSpec::new(8, 3).unwrap();
        assert_eq!(layer(b, 3, 1).unwrap().len(), 64);
        let row = layer(BoardSpec::new(5, 2).unwrap(), 1, 2).unwrap();
        assert_eq!(row.len(), 5);
        assert!(row.iter().all(|s| s.coords()[0] == 2));
        assert_eq!(layer(BoardSpec::new(3, 4).unwrap(), 2, 3).unwrap().len(), 27);
        assert!(layer(b, 4, 1).is_err());
        assert!(layer(b, 1, 9).is_err());
        assert!(layer(b, 0, 1).is_err());
    }
}
