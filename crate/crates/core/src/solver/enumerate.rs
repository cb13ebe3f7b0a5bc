use super::{checked_witness, SearchOptions, SolveResult, Status};
use crate::bitset::Bitset;
use crate::error::Result;
use crate::geometry::{BoardSpec, Placement};
use super::engine::{Engine, Limits, MAX_SEARCH_SQUARES};
use crate::Error;

/// Calls `emit` with every valid placement of exactly `k` queens, in
/// lexicographic order of their sorted queen lists, until it returns `false`.
/// The result's `count` is the number of placements emitted.
pub fn enumerate_solutions(
    board: BoardSpec,
    k: usize,
    opts: &SearchOptions,
    mut emit: impl FnMut(Placement) -> bool,
) -> Result<SolveResult> {
    opts.validate()?;
    let lex = Lex::new(board, opts.modular)?;
    let mut state = State {
        lex: &lex,
        limits: opts.limits(),
        nodes: 0,
        emitted: 0,
        chosen: Vec::with_capacity(k),
        emit: &mut |idx: &[usize]| emit(Placement::from_indices(board, idx)),
        first: None,
        stop: Stop::No,
    };
    state.rec(&Bitset::full(lex.len), k);
    let status = match state.stop {
        Stop::Limit => Status::Limit,
        _ if state.emitted > 0 => Status::Optimal,
        _ => Status::Infeasible,
    };
    let witness = state.first.as_ref().map(|w| checked_witness(board, w, opts.modular)).transpose()?;
    Ok(SolveResult {
        status,
        best_size: if state.emitted > 0 { k } else { 0 },
        count: Some(state.emitted.into()),
        witness,
        nodes: state.nodes,
    })
}

/// All valid placements of exactly `k` queens, in lexicographic order.
pub fn enumerate_all(board: BoardSpec, k: usize, opts: &SearchOptions) -> Result<Vec<Placement>> {
    let mut out = Vec::new();
    let r = enumerate_solutions(board, k, opts, |p| {
        out.push(p);
        true
    })?;
    if r.status == Status::Limit {
        return Err(Error::InvalidArgument("enumeration stopped at the search limit".into()));
    }
    Ok(out)
}

/// Linear-index neighbourhoods and axis lines for lexicographic search.
pub(crate) struct Lex {
    pub len: usize,
    pub nbr: Vec<Bitset>,
    axis_of: Vec<Vec<u32>>,
    per_axis: usize,
}

impl Lex {
    pub fn new(board: BoardSpec, modular: bool) -> Result<Self> {
        let len = board.num_squares();
        if len > MAX_SEARCH_SQUARES {
            return Err(Error::SearchTooLarge(len));
        }
        let (n, d) = (board.n(), board.d());
        let engine = Engine::new(board, modular)?;
        let nbr = (0..len)
            .map(|s| Bitset::from_indices(len, engine.nbr[engine.internal[s]].iter().map(|v| engine.square[v])))
            .collect();
        let axis_of = (0..d)
            .map(|a| {
                (0..len)
                    .map(|s| {
                        let c = board.coords_of(s);
                        c.iter().enumerate().filter(|&(i, _)| i != a).fold(0, |acc, (_, &x)| acc * n + x - 1) as u32
                    })
                    .collect()
            })
            .collect();
        Ok(Lex { len, nbr, axis_of, per_axis: len / n })
    }

    /// Lower of `|p|` and the fewest axis lines of one orientation meeting `p`.
    fn bound(&self, p: &Bitset, need: usize, seen: &mut Vec<u32>, gen: &mut u32) -> usize {
        let count = p.count();
        if count < need || need <= 1 {
            return count;
        }
        let mut best = count;
        for axis in &self.axis_of {
            if seen.len() < self.per_axis {
                seen.resize(self.per_axis, 0);
            }
            *gen = gen.wrapping_add(1);
            if *gen == 0 {
                seen.iter_mut().for_each(|s| *s = 0);
                *gen = 1;
            }
            let mut hit = 0;
            for v in p.iter() {
                let l = axis[v] as usize;
                if seen[l] != *gen {
                    seen[l] = *gen;
                    hit += 1;
                }
            }
            best = best.min(hit);
            if best < need {
                break;
            }
        }
        best
    }
}

#[derive(PartialEq, Eq)]
enum Stop {
    No,
    Caller,
    Limit,
}

struct State<'a, 'f> {
    lex: &'a Lex,
    limits: Limits,
    nodes: u64,
    emitted: u64,
    chosen: Vec<usize>,
    emit: &'f mut dyn FnMut(&[usize]) -> bool,
    first: Option<Vec<usize>>,
    stop: Stop,
}

impl State<'_, '_> {
    fn rec(&mut self, cands: &Bitset, need: usize) {
        self.nodes += 1;
        if self.nodes & 1023 == 0 {
            let over = self.limits.node_limit.is_some_and(|l| self.nodes > l)
                || self.limits.deadline.is_some_and(|t| std::time::Instant::now() >= t);
            if over {
                self.stop = Stop::Limit;
            }
        }
        if self.stop != Stop::No {
            return;
        }
        if need == 0 {
            if self.first.is_none() {
                self.first = Some(self.chosen.clone());
            }
            self.emitted += 1;
            if !(self.emit)(&self.chosen) {
                self.stop = Stop::Caller;
            }
            return;
        }
        let (mut seen, mut gen) = (Vec::new(), 0u32);
        let mut rest = cands.clone();
        let mut child = Bitset::new(self.lex.len);
        while let Some(v) = rest.first() {
            if self.lex.bound(&rest, need, &mut seen, &mut gen) < need {
                break;
            }
            rest.remove(v);
            child.assign_difference(&rest, &self.lex.nbr[v]);
            self.chosen.push(v);
            self.rec(&child, need - 1);
            self.chosen.pop();
            if self.stop != Stop::No {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::verify_certificate;

    fn b(n: usize, d: usize) -> BoardSpec {
        BoardSpec::new(n, d).unwrap()
    }

    #[test]
    fn examples() {
        let o = SearchOptions::default();
        let four = enumerate_all(b(4, 2), 4, &o).unwrap();
        assert_eq!(four.len(), 2);
        assert_eq!(four[0].queens()[0], [1, 2].into());
        assert_eq!(enumerate_all(b(3, 3), 4, &o).unwrap().len(), 16);
        assert_eq!(enumerate_all(b(1, 1), 1, &o).unwrap().len(), 1);
        assert_eq!(enumerate_all(b(3, 2), 3, &o).unwrap().len(), 0);
    }

    #[test]
    fn lexicographic_and_valid() {
        let o = SearchOptions::default();
        let all = enumerate_all(b(6, 2), 6, &o).unwrap();
        assert_eq!(all.len(), 4);
        for w in all.windows(2) {
            assert!(w[0].queens() < w[1].queens());
        }
        for p in enumerate_all(b(4, 3), 5, &o).unwrap() {
            assert!(verify_certificate(&p, false).unwrap().is_valid());
        }
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        let r = enumerate_solutions(b(8, 2), 8, &SearchOptions::default(), |_| {
            seen += 1;
            seen < 3
        })
        .unwrap();
        assert_eq!(seen, 3);
        assert_eq!(r.count.unwrap(), 3u8.into());
    }
}
