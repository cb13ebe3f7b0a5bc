use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Placement, Square};

/// Whether a placement is generated from a start square by fixed movements
/// taken mod `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regularity {
    /// The queens are `start + Σ j_i · movements[i] (mod n)`. A single
    /// movement means the `k`-th queen is `start + k · movement`; several
    /// movements span a lattice coset, as for linear solutions with `d ≥ 3`.
    Regular { start: Square, movements: Vec<Vec<usize>> },
    NotRegular,
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular { .. })
    }
}

/// Tries every start queen with every movement given by a difference of two
/// queens, then tests whether the placement is a coset of a subgroup of
/// `Z_n^d`.
pub fn regularity_check(p: &Placement) -> Result<Regularity> {
    if p.is_empty() {
        return Err(Error::InvalidArgument("regularity needs a nonempty placement".into()));
    }
    let n = p.board().n();
    let pts: Vec<Vec<usize>> = p.queens().iter().map(|q| q.coords().iter().map(|c| c - 1).collect()).collect();
    let set: HashSet<&[usize]> = pts.iter().map(Vec::as_slice).collect();
    let to_square = |v: &[usize]| Square::new(v.iter().map(|c| c + 1).collect());
    if pts.len() == 1 {
        return Ok(Regularity::Regular { start: to_square(&pts[0]), movements: vec![vec![0; pts[0].len()]] });
    }
    if pts.len() <= n {
        for s in &pts {
            for q in &pts {
                if q == s {
                    continue;
                }
                let m = sub(q, s, n);
                let mut cur = s.clone();
                let mut ok = true;
                let mut seen = HashSet::new();
                for _ in 0..pts.len() {
                    if !set.contains(cur.as_slice()) || !seen.insert(cur.clone()) {
                        ok = false;
                        break;
                    }
                    cur = add(&cur, &m, n);
                }
                if ok {
                    return Ok(Regularity::Regular { start: to_square(s), movements: vec![m] });
                }
            }
        }
    }
    let s = &pts[0];
    let diffs: Vec<Vec<usize>> = pts.iter().map(|q| sub(q, s, n)).collect();
    let group: HashSet<&[usize]> = diffs.iter().map(Vec::as_slice).collect();
    for a in &diffs {
        for b in &diffs {
            if !group.contains(add(a, b, n).as_slice()) {
                return Ok(Regularity::NotRegular);
            }
        }
    }
    let mut span: HashSet<Vec<usize>> = HashSet::from([vec![0; s.len()]]);
    let mut movements = Vec::new();
    for g in &diffs {
        if span.contains(g) {
            continue;
        }
        let mut frontier: Vec<Vec<usize>> = span.iter().cloned().collect();
        while let Some(v) = frontier.pop() {
            let w = add(&v, g, n);
            if span.insert(w.clone()) {
                frontier.push(w);
            }
        }
        movements.push(g.clone());
    }
    Ok(Regularity::Regular { start: to_square(s), movements })
}

fn add(a: &[usize], b: &[usize], n: usize) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| (x + y) % n).collect()
}

fn sub(a: &[usize], b: &[usize], n: usize) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| (x + n - y) % n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{hoffman_2d, regular_solution, RegularSpec};
    use crate::geometry::BoardSpec;

    #[test]
    fn klarner_is_regular() {
        let p = regular_solution(&RegularSpec::new(11, 3, vec![3, 5], 4).unwrap()).unwrap();
        match regularity_check(&p).unwrap() {
            Regularity::Regular { start, movements } => {
                assert_eq!(start, p.queens()[0]);
                assert_eq!(movements.len(), 2);
            }
            Regularity::NotRegular => panic!("linear solution reported irregular"),
        }
    }

    #[test]
    fn two_dimensional_cases() {
        let p = hoffman_2d(5).unwrap();
        assert_eq!(
            regularity_check(&p).unwrap(),
            Regularity::Regular { start: [1, 2].into(), movements: vec![vec![1, 2]] }
        );
        for (n, regular) in [(6, false), (7, true), (8, false), (9, false), (11, true), (15, false)] {
            assert_eq!(regularity_check(&hoffman_2d(n).unwrap()).unwrap().is_regular(), regular, "n={n}");
        }
        let board = BoardSpec::new(9, 2).unwrap();
        let single = Placement::new(board, vec![[4, 7].into()]).unwrap();
        assert!(regularity_check(&single).unwrap().is_regular());
        let line = Placement::new(board, vec![[1, 1].into(), [3, 2].into(), [5, 3].into()]).unwrap();
        assert!(regularity_check(&line).unwrap().is_regular());
        assert!(regularity_check(&Placement::empty(board)).is_err());
    }

    #[test]
    fn irregular_partial() {
        let board = BoardSpec::new(5, 3).unwrap();
        let p = Placement::new(board, vec![[1, 1, 1].into(), [2, 3, 5].into(), [4, 1, 2].into()]).unwrap();
        assert_eq!(regularity_check(&p).unwrap(), Regularity::NotRegular);
        let board = BoardSpec::new(2, 3).unwrap();
        let cube: Vec<Square> = board.squares().collect();
        let all = Placement::new(board, cube).unwrap();
        assert!(regularity_check(&all).unwrap().is_regular());
    }
}
