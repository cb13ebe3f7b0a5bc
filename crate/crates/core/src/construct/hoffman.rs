use super::gate;
use crate::error::{Error, Result};
use crate::geometry::{BoardSpec, Placement, Square};

/// A full solution on `(n, 2)` for every `n ≥ 4`.
///
/// Even `n` with `n ≢ 2 (mod 6)` uses `(j, 2j), (n/2 + j, 2j − 1)`; even
/// `n ≡ 2 (mod 6)` uses the mirrored pair of staircases
/// `(j, 1 + t_j), (n + 1 − j, n − t_j)` with `t_j = (2(j − 1) + n/2 − 1) mod n`.
/// Odd `n` extends the solution for `n − 1` by a queen on `(n, n)`.
pub fn hoffman_2d(n: usize) -> Result<Placement> {
    if n < 4 {
        return Err(Error::NoConstruction(format!("the ({n},2) board has no full solution")));
    }
    let board = BoardSpec::new(n, 2)?;
    let m = if n.is_multiple_of(2) { n } else { n - 1 };
    let h = m / 2;
    let mut queens = Vec::with_capacity(n);
    if m % 6 == 2 {
        for j in 1..=h {
            let t = (2 * (j - 1) + h - 1) % m;
            queens.push(Square::new(vec![j, 1 + t]));
            queens.push(Square::new(vec![m + 1 - j, m - t]));
        }
    } else {
        for j in 1..=h {
            queens.push(Square::new(vec![j, 2 * j]));
            queens.push(Square::new(vec![h + j, 2 * j - 1]));
        }
    }
    if m < n {
        queens.push(Square::new(vec![n, n]));
    }
    gate(Placement::new(board, queens)?, false, "hoffman_2d")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(v: &[[usize; 2]]) -> Vec<Square> {
        v.iter().map(|&c| Square::from(c)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(hoffman_2d(4).unwrap().queens(), sq(&[[1, 2], [2, 4], [3, 1], [4, 3]]).as_slice());
        assert_eq!(hoffman_2d(5).unwrap().queens(), sq(&[[1, 2], [2, 4], [3, 1], [4, 3], [5, 5]]).as_slice());
        assert_eq!(
            hoffman_2d(6).unwrap().queens(),
            sq(&[[1, 2], [2, 4], [3, 6], [4, 1], [5, 3], [6, 5]]).as_slice()
        );
        for n in 0..4 {
            assert!(matches!(hoffman_2d(n), Err(Error::NoConstruction(_))));
        }
    }

    #[test]
    fn sizes_up_to_64() {
        for n in 4..=64 {
            assert_eq!(hoffman_2d(n).unwrap().len(), n);
        }
    }
}
