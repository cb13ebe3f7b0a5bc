use std::collections::BTreeSet;

use super::{BoardSpec, Direction, Square};
use crate::error::Result;

/// The `(3^d - 1) / 2` canonical attack directions in lexicographic order.
pub fn attack_directions(d: usize) -> Vec<Direction> {
    let mut out = Vec::new();
    let mut eps = vec![-1i8; d];
    loop {
        if let Some(&first) = eps.iter().find(|&&e| e != 0) {
            if first == 1 {
                out.push(Direction(eps.clone()));
            }
        }
        // odometer over {-1,0,1}^d, last entry fastest
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if eps[i] < 1 {
                eps[i] += 1;
                break;
            }
            eps[i] = -1;
        }
    }
}

fn check_pair(q1: &Square, q2: &Square, board: BoardSpec) -> Result<()> {
    board.check(q1)?;
    board.check(q2)
}

/// Standard queen attack: the difference of the two squares is `m·ε` for some
/// nonzero `ε ∈ {-1,0,1}^d`. A square attacks itself.
pub fn attacks(q1: &Square, q2: &Square, board: BoardSpec) -> Result<bool> {
    check_pair(q1, q2, board)?;
    Ok(attacks_coords(q1.coords(), q2.coords()))
}

pub(crate) fn attacks_coords(a: &[usize], b: &[usize]) -> bool {
    let mut step = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        let diff = x.abs_diff(y);
        if diff != 0 {
            if step == 0 {
                step = diff;
            } else if step != diff {
                return false;
            }
        }
    }
    true
}

/// Attack on the modular (toroidal) board: `q1 ≡ q2 + m·ε (mod n)` for some
/// integer `m` and nonzero `ε`. Implied by [`attacks`].
pub fn modular_attacks(q1: &Square, q2: &Square, board: BoardSpec) -> Result<bool> {
    check_pair(q1, q2, board)?;
    Ok(modular_attacks_coords(q1.coords(), q2.coords(), board.n()))
}

pub(crate) fn modular_attacks_coords(a: &[usize], b: &[usize], n: usize) -> bool {
    if a == b {
        return true;
    }
    let delta: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| (x + n - y) % n).collect();
    // δ ≡ m·ε: every nonzero component equals m or n - m
    (1..n).any(|m| delta.iter().all(|&c| c == 0 || c == m || c == n - m))
}

/// Squares attacked by a queen on `q`, including `q` itself, in lexicographic
/// order.
pub fn attacked_squares(q: &Square, board: BoardSpec, modular: bool) -> Result<BTreeSet<Square>> {
    board.check(q)?;
    Ok(attacked_coords(q.coords(), board, modular).into_iter().map(Square).collect())
}

pub(crate) fn attacked_coords(q: &[usize], board: BoardSpec, modular: bool) -> BTreeSet<Vec<usize>> {
    let n = board.n() as i64;
    let mut out = BTreeSet::new();
    out.insert(q.to_vec());
    for dir in attack_directions(board.d()) {
        for sign in [-1i64, 1] {
            for m in 1..n {
                let mut sq = Vec::with_capacity(q.len());
                let mut inside = true;
                for (&c, &e) in q.iter().zip(dir.eps()) {
                    let mut v = c as i64 + sign * m * e as i64;
                    if modular {
                        v = (v - 1).rem_euclid(n) + 1;
                    } else if v < 1 || v > n {
                        inside = false;
                        break;
                    }
                    sq.push(v as usize);
                }
                if !inside {
                    break;
                }
                out.insert(sq);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn b(n: usize, d: usize) -> BoardSpec {
        BoardSpec::new(n, d).unwrap()
    }

    fn sq<const N: usize>(c: [usize; N]) -> Square {
        Square::from(c)
    }

    #[test]
    fn direction_counts() {
        assert_eq!(attack_directions(1).len(), 1);
        assert_eq!(attack_directions(2).len(), 4);
        assert_eq!(attack_directions(3).len(), 13);
        assert_eq!(attack_directions(4).len(), 40);
        let d2: Vec<Vec<i8>> = attack_directions(2).iter().map(|d| d.eps().to_vec()).collect();
        assert_eq!(d2, vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn directions_are_canonical_and_sorted() {
        for d in 1..=5 {
            let dirs = attack_directions(d);
            let mut sorted = dirs.clone();
            sorted.sort();
            assert_eq!(dirs, sorted);
            for dir in &dirs {
                assert_eq!(Direction::new(dir.eps().to_vec()).unwrap(), *dir);
            }
        }
    }

    #[test]
    fn attack_examples() {
        assert!(attacks(&sq([4, 2, 3]), &sq([4, 2, 7]), b(8, 3)).unwrap());
        assert!(attacks(&sq([1, 1, 1]), &sq([3, 3, 3]), b(8, 3)).unwrap());
        assert!(!attacks(&sq([1, 1]), &sq([2, 3]), b(4, 2)).unwrap());
        assert!(matches!(
            attacks(&sq([1, 1]), &sq([1, 1, 1]), b(4, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn modular_attack_examples() {
        // (2,7) - (1,1) = (1,6) ≡ 1·(1,-1) mod 7
        assert!(modular_attacks(&sq([1, 1]), &sq([2, 7]), b(7, 2)).unwrap());
        assert!(modular_attacks(&sq([4, 2, 3]), &sq([4, 2, 7]), b(8, 3)).unwrap());
        // (1,2) is not a multiple of any ε mod 5
        assert!(!modular_attacks(&sq([1, 1]), &sq([2, 3]), b(5, 2)).unwrap());
    }

    #[test]
    fn attacked_square_extremes() {
        for d in 1..=4 {
            let board = b(3, d);
            let center = Square::new(vec![2; d]);
            assert_eq!(attacked_squares(&center, board, false).unwrap().len(), 3usize.pow(d as u32));
        }
        for (n, d) in [(5, 2), (5, 3), (7, 3), (5, 4)] {
            let board = b(n, d);
            let center = Square::new(vec![n.div_ceil(2); d]);
            let corner = Square::new(vec![1; d]);
            let up = (3usize.pow(d as u32) - 1) / 2 * (n - 1) + 1;
            let lo = (2usize.pow(d as u32) - 1) * (n - 1) + 1;
            assert_eq!(attacked_squares(&center, board, false).unwrap().len(), up);
            assert_eq!(attacked_squares(&corner, board, false).unwrap().len(), lo);
        }
    }

    #[test]
    fn modular_attacked_count_for_prime_n() {
        // on a torus with n prime every direction gives n - 1 distinct squares
        let board = b(5, 2);
        let s = attacked_squares(&sq([1, 1]), board, true).unwrap();
        assert_eq!(s.len(), 4 * 4 + 1);
    }
}
