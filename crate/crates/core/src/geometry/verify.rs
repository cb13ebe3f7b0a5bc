use std::collections::{BTreeSet, HashMap};

use super::{attack_directions, Placement, Square};
use crate::error::Result;

/// Outcome of checking a placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Every attacking pair `(a, b)` with `a < b`, sorted.
    Conflicts(Vec<(Square, Square)>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn conflicts(&self) -> &[(Square, Square)] {
        match self {
            Verdict::Valid => &[],
            Verdict::Conflicts(c) => c,
        }
    }
}

/// Checks that no two queens attack each other, under the standard or the
/// modular relation.
pub fn verify_certificate(p: &Placement, modular: bool) -> Result<Verdict> {
    let board = p.board();
    for q in p.queens() {
        board.check(q)?;
    }
    let pairs = conflicting_pairs(p.queens(), board.n(), modular);
    if pairs.is_empty() {
        return Ok(Verdict::Valid);
    }
    let queens = p.queens();
    Ok(Verdict::Conflicts(
        pairs.into_iter().map(|(a, b)| (queens[a].clone(), queens[b].clone())).collect(),
    ))
}

/// Index pairs `(i, j)`, `i < j`, of attacking squares in `queens`.
pub(crate) fn conflicting_pairs(queens: &[Square], n: usize, modular: bool) -> BTreeSet<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    let Some(first) = queens.first() else { return pairs };
    let d = first.dim();
    let n = n as i64;
    let mut groups: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for dir in attack_directions(d) {
        let eps = dir.eps();
        let lead = eps.iter().position(|&e| e != 0).expect("directions are nonzero");
        groups.clear();
        for (qi, q) in queens.iter().enumerate() {
            // coordinates that stay constant while walking along ε
            let c = q.coords();
            let key: Vec<i64> = (0..d)
                .filter(|&i| i != lead)
                .map(|i| {
                    let v = c[i] as i64 - eps[i] as i64 * c[lead] as i64;
                    if modular {
                        v.rem_euclid(n)
                    } else {
                        v
                    }
                })
                .collect();
            groups.entry(key).or_default().push(qi);
        }
        for members in groups.values() {
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    pairs.insert((i.min(j), i.max(j)));
                }
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::attack::{attacks_coords, modular_attacks_coords};
    use crate::geometry::BoardSpec;

    #[test]
    fn examples() {
        let board = BoardSpec::new(5, 2).unwrap();
        let p = Placement::new(board, vec![[1, 1].into(), [1, 5].into()]).unwrap();
        assert_eq!(
            verify_certificate(&p, false).unwrap(),
            Verdict::Conflicts(vec![([1, 1].into(), [1, 5].into())])
        );
        assert!(verify_certificate(&Placement::empty(board), false).unwrap().is_valid());
        assert!(verify_certificate(&Placement::empty(board), true).unwrap().is_valid());
    }

    #[test]
    fn grouping_matches_pairwise_relation() {
        for (n, d) in [(4, 2), (5, 2), (6, 2), (4, 3), (3, 3)] {
            let board = BoardSpec::new(n, d).unwrap();
            let all: Vec<Square> = board.squares().collect();
            for modular in [false, true] {
                let got = conflicting_pairs(&all, n, modular);
                for i in 0..all.len() {
                    for j in i + 1..all.len() {
                        let (a, b) = (all[i].coords(), all[j].coords());
                        let expect = if modular { modular_attacks_coords(a, b, n) } else { attacks_coords(a, b) };
                        assert_eq!(got.contains(&(i, j)), expect, "{:?} {:?} modular={modular}", a, b);
                    }
                }
            }
        }
    }
}
