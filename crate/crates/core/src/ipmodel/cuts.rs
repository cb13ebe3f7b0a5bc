use super::{Family, IpModel, Sense};
use crate::bounds::KnownTable;
use crate::error::{Error, Result};
use crate::geometry::{attacks, queen_graph, BoardSpec, Square};

/// All points of `[lo, hi]^d` in lexicographic order.
fn boxes(lo: usize, hi: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    let width = hi + 1 - lo.min(hi + 1);
    let count = if lo > hi { 0 } else { width.pow(d as u32) };
    (0..count).map(move |mut i| {
        let mut c = vec![0; d];
        for slot in c.iter_mut().rev() {
            *slot = lo + i % width;
            i /= width;
        }
        c
    })
}

fn debug_check_clique(board: BoardSpec, members: &[Vec<usize>]) {
    if cfg!(debug_assertions) {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let (a, b) = (Square::new(a.clone()), Square::new(b.clone()));
                debug_assert!(attacks(&a, &b, board).unwrap_or(false), "{a} and {b} do not attack");
            }
        }
    }
}

/// Hypercube-corner cliques: for every anchor `a` and offset `h ≥ 1` with
/// `a + h` on the board, the `2^d` squares `a + h·b` (`b ∈ {0,1}^d`), plus the
/// centre `a + h/2` when `h` is even. Ordered by anchor, then `h`.
pub fn add_cube_cliques(model: &mut IpModel) {
    let board = model.board;
    let (n, d) = (board.n(), board.d());
    for anchor in boxes(1, n.saturating_sub(1), d) {
        let reach = n - anchor.iter().max().copied().unwrap_or(1);
        for h in 1..=reach {
            let mut members: Vec<Vec<usize>> = (0..1usize << d)
                .map(|b| anchor.iter().enumerate().map(|(i, &a)| a + h * (b >> (d - 1 - i) & 1)).collect())
                .collect();
            if h % 2 == 0 {
                members.push(anchor.iter().map(|&a| a + h / 2).collect());
            }
            debug_check_clique(board, &members);
            let terms = members.iter().map(|c| board.index_unchecked(c)).collect();
            model.push(Family::Cube, None, terms, Sense::Le, 1);
        }
    }
}

/// Star cliques: a centre `c` and the `2d` squares `c ± h·e_i`, for every
/// `h ≥ 1` keeping all of them on the board. Ordered by centre, then `h`.
pub fn add_star_cliques(model: &mut IpModel) {
    let board = model.board;
    let (n, d) = (board.n(), board.d());
    for center in boxes(1, n, d) {
        let reach = center.iter().map(|&c| (c - 1).min(n - c)).min().unwrap_or(0);
        for h in 1..=reach {
            let mut members = vec![center.clone()];
            for i in 0..d {
                for sign in [false, true] {
                    let mut c = center.clone();
                    c[i] = if sign { c[i] + h } else { c[i] - h };
                    members.push(c);
                }
            }
            debug_check_clique(board, &members);
            let terms = members.iter().map(|c| board.index_unchecked(c)).collect();
            model.push(Family::Star, None, terms, Sense::Le, 1);
        }
    }
}

/// Layer inequalities: the squares with `d − j` coordinates fixed hold at most
/// `|Qmax(n, j)|` queens. Added for the `(d − 1)`-dimensional layers and,
/// recursively, for sub-layers down to dimension 3. The qualifier records
/// whether the table value is exact or an upper bound.
pub fn add_layer_inequalities(model: &mut IpModel, table: &KnownTable) -> Result<()> {
    let board = model.board;
    let (n, d) = (board.n(), board.d());
    if d < 3 {
        return Ok(());
    }
    let dims: Vec<usize> = (3.min(d - 1)..d).rev().collect();
    let mut rows = Vec::new();
    for &j in &dims {
        let (rhs, kind) = table.require_upper(n, j)?;
        for fixed in combinations(d, d - j) {
            for values in boxes(1, n, d - j) {
                let terms: Vec<usize> = board
                    .squares()
                    .filter(|s| fixed.iter().zip(&values).all(|(&f, &v)| s.coords()[f] == v))
                    .map(|s| board.index_unchecked(s.coords()))
                    .collect();
                rows.push((terms, rhs, kind));
            }
        }
    }
    for (terms, rhs, kind) in rows {
        model.push(Family::Layer, Some(kind.to_string()), terms, Sense::Le, rhs);
    }
    Ok(())
}

/// `k`-subsets of `0..d` in lexicographic order.
fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Subsolution inequalities: every `m^d` sub-box holds at most
/// `|Qmax(m, d)|` queens, `(n − m + 1)^d` rows per `m`.
pub fn add_subsolution_inequalities(model: &mut IpModel, table: &KnownTable, ms: &[usize]) -> Result<()> {
    let board = model.board;
    let (n, d) = (board.n(), board.d());
    for &m in ms {
        if m == 0 || m > n {
            return Err(Error::OutOfRange(format!("sub-box size {m} on a board of size {n}")));
        }
        let (rhs, _) = table.require_upper(m, d)?;
        for anchor in boxes(1, n - m + 1, d) {
            let terms = boxes(0, m - 1, d)
                .map(|off| {
                    let c: Vec<usize> = anchor.iter().zip(&off).map(|(a, o)| a + o).collect();
                    board.index_unchecked(&c)
                })
                .collect();
            model.push(Family::Subsol, Some(format!("m{m}")), terms, Sense::Le, rhs);
        }
    }
    Ok(())
}

/// Odd-cycle inequalities `Σ_{s ∈ O} x_s ≤ (|O| − 1)/2` for cycles of the
/// queen graph of odd length at least 5, given as squares in cycle order.
pub fn add_odd_cycle_inequalities(model: &mut IpModel, cycles: &[Vec<Square>]) -> Result<()> {
    let board = model.board;
    for cycle in cycles {
        let len = cycle.len();
        if len < 5 || len % 2 == 0 {
            return Err(Error::InvalidArgument(format!("odd-cycle cuts need an odd cycle of length at least 5, got {len}")));
        }
        let mut terms = Vec::with_capacity(len);
        for (i, s) in cycle.iter().enumerate() {
            board.check(s)?;
            let next = &cycle[(i + 1) % len];
            if !attacks(s, next, board)? {
                return Err(Error::InvalidArgument(format!("{s} and {next} are consecutive but do not attack")));
            }
            terms.push(board.index_unchecked(s.coords()));
        }
        let mut distinct = terms.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != len {
            return Err(Error::InvalidArgument("cycle repeats a square".into()));
        }
        model.push(Family::OddCycle, None, terms, Sense::Le, (len as u64 - 1) / 2);
    }
    Ok(())
}

/// Up to `limit` chordless 5-cycles of the queen graph, each listed from its
/// smallest square with the smaller neighbour second.
pub fn chordless_odd_cycles(board: BoardSpec, limit: usize) -> Vec<Vec<Square>> {
    let g = queen_graph(board);
    let mut out = Vec::new();
    let len = g.num_vertices();
    for v0 in 0..len {
        let n0: Vec<usize> = g.neighbors(v0).iter().copied().filter(|&v| v > v0).collect();
        for &v1 in &n0 {
            for &v2 in g.neighbors(v1) {
                if v2 <= v0 || v2 == v1 || g.adjacent(v0, v2) {
                    continue;
                }
                for &v3 in g.neighbors(v2) {
                    if v3 <= v0 || v3 == v1 || g.adjacent(v3, v0) || g.adjacent(v3, v1) {
                        continue;
                    }
                    for &v4 in g.neighbors(v3) {
                        if v4 <= v1 || v4 == v2 || !g.adjacent(v4, v0) || g.adjacent(v4, v1) || g.adjacent(v4, v2) {
                            continue;
                        }
                        out.push([v0, v1, v2, v3, v4].iter().map(|&v| Square::new(board.coords_of(v))).collect());
                        if out.len() >= limit {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipmodel::{build_base, evaluate, ModelMode};
    use crate::Placement;

    fn b(n: usize, d: usize) -> BoardSpec {
        BoardSpec::new(n, d).unwrap()
    }

    fn model(n: usize, d: usize) -> IpModel {
        build_base(b(n, d), ModelMode::Max).unwrap()
    }

    fn squares(m: &IpModel, terms: &[usize]) -> Vec<Square> {
        terms.iter().map(|&t| m.variables[t].square.clone()).collect()
    }

    #[test]
    fn cube_counts_and_shapes() {
        for (n, d) in [(5, 2), (9, 3), (4, 4)] {
            let mut m = model(n, d);
            add_cube_cliques(&mut m);
            let expected: usize = (2..=n).map(|k| (n - k + 1).pow(d as u32)).sum();
            assert_eq!(m.num_constraints(Family::Cube), expected, "({n},{d})");
        }
        let mut m = model(9, 3);
        add_cube_cliques(&mut m);
        assert_eq!(m.num_constraints(Family::Cube), 1296);

        let mut m = model(4, 2);
        add_cube_cliques(&mut m);
        let corners: Vec<Square> = vec![[1, 1].into(), [1, 4].into(), [4, 1].into(), [4, 4].into()];
        assert!(m.constraints_of(Family::Cube).any(|c| squares(&m, &c.terms) == corners));

        let mut m = model(3, 3);
        add_cube_cliques(&mut m);
        let big = m.constraints_of(Family::Cube).find(|c| c.terms.len() == 9).unwrap();
        assert!(squares(&m, &big.terms).contains(&[2, 2, 2].into()));
    }

    #[test]
    fn stars() {
        let mut m = model(9, 3);
        add_star_cliques(&mut m);
        let want: Vec<Square> = {
            let mut v: Vec<Square> = vec![
                [5, 5, 5].into(),
                [2, 5, 5].into(),
                [8, 5, 5].into(),
                [5, 2, 5].into(),
                [5, 8, 5].into(),
                [5, 5, 2].into(),
                [5, 5, 8].into(),
            ];
            v.sort();
            v
        };
        assert!(m.constraints_of(Family::Star).any(|c| squares(&m, &c.terms) == want));
        for c in m.constraints_of(Family::Star) {
            assert_eq!(c.terms.len(), 7);
        }
        let mut m = model(3, 2);
        add_star_cliques(&mut m);
        assert_eq!(m.num_constraints(Family::Star), 1);
        assert_eq!(m.constraints_of(Family::Star).next().unwrap().terms.len(), 5);
    }

    #[test]
    fn cliques_are_pairwise_attacking() {
        for (n, d) in [(5, 2), (4, 3), (3, 4)] {
            let mut m = model(n, d);
            add_cube_cliques(&mut m);
            add_star_cliques(&mut m);
            for c in m.constraints.iter().filter(|c| matches!(c.family, Family::Cube | Family::Star)) {
                let sq = squares(&m, &c.terms);
                for i in 0..sq.len() {
                    for j in i + 1..sq.len() {
                        assert!(attacks(&sq[i], &sq[j], m.board).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn layers() {
        let t = KnownTable::vendored();
        let mut m = model(6, 4);
        add_layer_inequalities(&mut m, &t).unwrap();
        assert_eq!(m.num_constraints(Family::Layer), 24);
        assert!(m.constraints_of(Family::Layer).all(|c| c.rhs == 21 && c.name.starts_with("layer_exact_")));
        let mut m = model(4, 4);
        add_layer_inequalities(&mut m, &t).unwrap();
        assert!(m.constraints_of(Family::Layer).all(|c| c.rhs == 7));
        let mut m = model(5, 3);
        add_layer_inequalities(&mut m, &t).unwrap();
        assert_eq!(m.num_constraints(Family::Layer), 15);
        assert!(m.constraints_of(Family::Layer).all(|c| c.rhs == 5 && c.terms.len() == 25));
        let mut m = model(3, 5);
        add_layer_inequalities(&mut m, &t).unwrap();
        // 15 four-dimensional layers and 10·9 three-dimensional sub-layers
        assert_eq!(m.num_constraints(Family::Layer), 15 + 90);
        let mut m = model(9, 4);
        assert!(matches!(add_layer_inequalities(&mut m, &KnownTable::new()), Err(Error::MissingTableEntry { n: 9, d: 3 })));
    }

    #[test]
    fn subsolutions() {
        let t = KnownTable::vendored();
        let mut m = model(11, 3);
        add_subsolution_inequalities(&mut m, &t, &[10]).unwrap();
        assert_eq!(m.num_constraints(Family::Subsol), 8);
        assert!(m.constraints_of(Family::Subsol).all(|c| c.rhs == 91 && c.terms.len() == 1000));
        let mut m = model(5, 3);
        add_subsolution_inequalities(&mut m, &t, &[4, 5]).unwrap();
        assert_eq!(m.constraints_of(Family::Subsol).filter(|c| c.rhs == 7).count(), 8);
        assert_eq!(m.constraints_of(Family::Subsol).filter(|c| c.rhs == 13).count(), 1);
        assert!(add_subsolution_inequalities(&mut m, &KnownTable::new(), &[4]).is_err());
    }

    #[test]
    fn odd_cycles() {
        let board = b(5, 2);
        let cycles = chordless_odd_cycles(board, 10);
        assert!(!cycles.is_empty());
        let mut m = model(5, 2);
        add_odd_cycle_inequalities(&mut m, &cycles).unwrap();
        assert!(m.constraints_of(Family::OddCycle).all(|c| c.rhs == 2 && c.terms.len() == 5));
        for c in &cycles {
            for i in 0..5 {
                for j in i + 1..5 {
                    let adjacent = j == i + 1 || (i == 0 && j == 4);
                    assert_eq!(attacks(&c[i], &c[j], board).unwrap(), adjacent);
                }
            }
        }
        let triangle: Vec<Square> = vec![[1, 1].into(), [1, 2].into(), [1, 3].into()];
        assert!(add_odd_cycle_inequalities(&mut m, &[triangle]).is_err());
        let even = cycles[0][..4].to_vec();
        assert!(add_odd_cycle_inequalities(&mut m, &[even]).is_err());
        let mut broken = cycles[0].clone();
        broken.swap(1, 2);
        assert!(add_odd_cycle_inequalities(&mut m, &[broken]).is_err());
    }

    #[test]
    fn seven_cycle_rhs() {
        // a 7-cycle of the (7,2) queen graph, not necessarily chordless
        let cyc: Vec<Square> = vec![[1, 1].into(), [1, 3].into(), [3, 5].into(), [5, 5].into(), [7, 3].into(), [5, 1].into(), [3, 1].into()];
        let mut m = model(7, 2);
        add_odd_cycle_inequalities(&mut m, &[cyc]).unwrap();
        assert_eq!(m.constraints_of(Family::OddCycle).next().unwrap().rhs, 3);
    }

    #[test]
    fn solutions_satisfy_all_cuts() {
        let t = KnownTable::vendored();
        let board = b(5, 3);
        let mut m = build_base(board, ModelMode::Max).unwrap();
        add_cube_cliques(&mut m);
        add_star_cliques(&mut m);
        add_layer_inequalities(&mut m, &t).unwrap();
        add_subsolution_inequalities(&mut m, &t, &[2, 3, 4]).unwrap();
        let p = crate::solver::max_partial(board, &Default::default()).unwrap().witness.unwrap();
        assert!(evaluate(&m, &p).unwrap().is_feasible());
        let two = Placement::new(board, vec![[1, 1, 1].into(), [3, 3, 3].into()]).unwrap();
        assert!(!evaluate(&m, &two).unwrap().is_feasible());
    }
}
