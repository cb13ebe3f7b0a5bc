//! Exact search: maximum partial solutions, counting, enumeration,
//! completion, completion thresholds and domination.

mod completion;
mod dominate;
pub(crate) mod engine;
mod enumerate;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{verify_certificate, BoardSpec, Placement};
use engine::{Engine, Goal, Limits, RunOutcome, Task};

pub use completion::{completion_threshold, ThresholdResult};
pub use dominate::min_domination;
pub use enumerate::{enumerate_all, enumerate_solutions};

/// What [`solve`] computes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    #[default]
    Maximize,
    Count(usize),
    Enumerate(usize),
    Decide(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchOptions {
    /// Wall-clock limit in seconds.
    pub time_limit: Option<f64>,
    pub node_limit: Option<u64>,
    /// Worker threads; 0 uses the available parallelism.
    pub threads: usize,
    /// Split the search by orbits of the first queen under the board
    /// symmetries.
    pub symmetry_reduction: bool,
    /// Use the modular (toroidal) attack relation.
    pub modular: bool,
    pub target: Target,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            time_limit: None,
            node_limit: None,
            threads: 0,
            symmetry_reduction: false,
            modular: false,
            target: Target::Maximize,
        }
    }
}

impl SearchOptions {
    pub fn validate(&self) -> Result<()> {
        if self.time_limit.is_some_and(|t| !(t > 0.0) || !t.is_finite()) {
            return Err(Error::InvalidArgument("time limit must be positive".into()));
        }
        if self.node_limit == Some(0) {
            return Err(Error::InvalidArgument("node limit must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn limits(&self) -> Limits {
        Limits {
            node_limit: self.node_limit,
            deadline: self.time_limit.map(|t| Instant::now() + Duration::from_secs_f64(t)),
        }
    }

    pub(crate) fn thread_count(&self) -> usize {
        match self.threads {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            t => t,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Infeasible,
    Limit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: Status,
    pub best_size: usize,
    /// Number of solutions, for counting targets. Serialized as a JSON number
    /// when it fits in 64 bits and as a decimal string otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "count_format")]
    pub count: Option<BigUint>,
    pub witness: Option<Placement>,
    pub nodes: u64,
}

/// Serializes a count as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise.
pub(crate) mod big_count {
    use super::*;
    use num_traits::ToPrimitive;

    pub fn serialize<S: Serializer>(c: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        match c.to_u64() {
            Some(x) => s.serialize_u64(x),
            None => s.serialize_str(&c.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<BigUint, D::Error> {
        super::count_format::deserialize(de)?.ok_or_else(|| serde::de::Error::custom("missing count"))
    }
}

mod count_format {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(c) => super::big_count::serialize(c, s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Option<BigUint>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        Ok(match Option::<Repr>::deserialize(de)? {
            None => None,
            Some(Repr::Num(x)) => Some(BigUint::from(x)),
            Some(Repr::Str(s)) => Some(s.parse().map_err(serde::de::Error::custom)?),
        })
    }
}

/// Runs the target selected in `opts`.
pub fn solve(board: BoardSpec, opts: &SearchOptions) -> Result<SolveResult> {
    match opts.target {
        Target::Maximize => max_partial(board, opts),
        Target::Count(k) => count_solutions(board, k, opts),
        Target::Decide(k) => complete(board, &Placement::empty(board), k, opts),
        Target::Enumerate(k) => enumerate_solutions(board, k, opts, |_| true),
    }
}

/// `|Qmax(n, d)|` with a witness.
pub fn max_partial(board: BoardSpec, opts: &SearchOptions) -> Result<SolveResult> {
    opts.validate()?;
    let eng = Engine::new(board, opts.modular)?;
    let limits = opts.limits();
    let mut best = eng.greedy(&[]);
    let mut nodes = 0;
    let full = eng.full();
    let root_bound = eng.cover_bound(&full).min(eng.color_bound(&full));
    let status = loop {
        let k = best.len() + 1;
        if root_bound < k {
            break Status::Optimal;
        }
        let out = decide_from(&eng, &[], k, opts, limits);
        nodes += out.nodes;
        match out.found {
            Some(w) => best = w,
            None if out.complete => break Status::Optimal,
            None => break Status::Limit,
        }
    };
    let witness = checked_witness(board, &best, opts.modular)?;
    Ok(SolveResult { status, best_size: best.len(), count: None, witness: Some(witness), nodes })
}

/// Number of placements of exactly `k` mutually non-attacking queens.
pub fn count_solutions(board: BoardSpec, k: usize, opts: &SearchOptions) -> Result<SolveResult> {
    opts.validate()?;
    if k == 0 {
        return Ok(SolveResult {
            status: Status::Optimal,
            best_size: 0,
            count: Some(BigUint::from(1u8)),
            witness: Some(Placement::empty(board)),
            nodes: 0,
        });
    }
    let eng = Engine::new(board, opts.modular)?;
    let out = run_from(&eng, &[], k, Goal::Count, opts, opts.limits(), None);
    outcome_result(board, k, out, opts.modular)
}

/// Whether `partial` extends to a valid placement of `k` queens.
pub fn complete(board: BoardSpec, partial: &Placement, k: usize, opts: &SearchOptions) -> Result<SolveResult> {
    opts.validate()?;
    check_partial(board, partial, opts.modular)?;
    let start = partial.indices();
    if k <= start.len() {
        let ok = k == start.len();
        return Ok(SolveResult {
            status: if ok { Status::Optimal } else { Status::Infeasible },
            best_size: if ok { k } else { 0 },
            count: None,
            witness: ok.then(|| partial.clone()),
            nodes: 0,
        });
    }
    let eng = Engine::new(board, opts.modular)?;
    let out = decide_from(&eng, &start, k, opts, opts.limits());
    let status = match (&out.found, out.complete) {
        (Some(_), _) => Status::Optimal,
        (None, true) => Status::Infeasible,
        (None, false) => Status::Limit,
    };
    let witness = out.found.as_ref().map(|w| checked_witness(board, w, opts.modular)).transpose()?;
    Ok(SolveResult { status, best_size: witness.as_ref().map_or(0, Placement::len), count: None, witness, nodes: out.nodes })
}

/// Calls `visit` with the sorted linear indices of every size-`k` solution
/// containing the squares `start`, in no particular order.
pub(crate) fn visit_solutions(
    board: BoardSpec,
    start: &[usize],
    k: usize,
    opts: &SearchOptions,
    visit: &(dyn Fn(&[usize]) + Sync),
) -> Result<SolveResult> {
    opts.validate()?;
    let eng = Engine::new(board, opts.modular)?;
    let plain = SearchOptions { symmetry_reduction: false, ..opts.clone() };
    let out = run_from(&eng, start, k, Goal::Visit, &plain, opts.limits(), Some(visit));
    outcome_result(board, k, out, opts.modular)
}

pub(crate) fn check_partial(board: BoardSpec, partial: &Placement, modular: bool) -> Result<()> {
    if partial.board() != board {
        return Err(Error::InvalidArgument(format!(
            "placement is on board {}, expected {board}",
            partial.board()
        )));
    }
    let conflicts = verify_certificate(partial, modular)?.conflicts().len();
    if conflicts > 0 {
        return Err(Error::InvalidPlacement(conflicts));
    }
    Ok(())
}

fn outcome_result(board: BoardSpec, k: usize, out: RunOutcome, modular: bool) -> Result<SolveResult> {
    let status = match (out.complete, out.found.is_some()) {
        (false, _) => Status::Limit,
        (true, true) => Status::Optimal,
        (true, false) => Status::Infeasible,
    };
    let witness = out.found.as_ref().map(|w| checked_witness(board, w, modular)).transpose()?;
    Ok(SolveResult {
        status,
        best_size: if witness.is_some() { k } else { 0 },
        count: Some(out.count),
        witness,
        nodes: out.nodes,
    })
}

pub(crate) fn decide_from(eng: &Engine, start: &[usize], k: usize, opts: &SearchOptions, limits: Limits) -> RunOutcome {
    run_from(eng, start, k, Goal::Decide, opts, limits, None)
}

fn run_from(
    eng: &Engine,
    start: &[usize],
    k: usize,
    goal: Goal,
    opts: &SearchOptions,
    limits: Limits,
    visitor: Option<&(dyn Fn(&[usize]) + Sync)>,
) -> RunOutcome {
    let Some(avail) = eng.avail_after(start) else {
        return RunOutcome { found: None, count: BigUint::default(), complete: true, nodes: 0 };
    };
    if k <= start.len() {
        let ok = k == start.len();
        let mut w = start.to_vec();
        w.sort_unstable();
        if ok {
            if let Some(f) = visitor {
                f(&w);
            }
        }
        return RunOutcome { found: ok.then_some(w), count: BigUint::from(ok as u8), complete: true, nodes: 0 };
    }
    let tasks: Vec<Task> = if opts.symmetry_reduction && start.is_empty() && eng.board.d() <= 6 {
        eng.orbit_tasks()
    } else {
        eng.plain_tasks(start, &avail)
    };
    eng.run(&tasks, k, goal, limits, opts.thread_count(), visitor)
}

fn checked_witness(board: BoardSpec, idx: &[usize], modular: bool) -> Result<Placement> {
    let p = Placement::from_indices(board, idx);
    match verify_certificate(&p, modular)?.conflicts().len() {
        0 => Ok(p),
        k => Err(Error::ConstructionFailed(format!("search returned a witness with {k} conflicts"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: usize, d: usize) -> BoardSpec {
        BoardSpec::new(n, d).unwrap()
    }

    fn count(n: usize, d: usize, k: usize, opts: &SearchOptions) -> u64 {
        let r = count_solutions(b(n, d), k, opts).unwrap();
        r.count.unwrap().try_into().unwrap()
    }

    #[test]
    fn small_maxima() {
        let o = SearchOptions::default();
        for (n, d, q) in [(1, 1, 1), (1, 3, 1), (2, 2, 1), (3, 2, 2), (4, 2, 4), (3, 3, 4), (4, 3, 7), (3, 4, 6)] {
            let r = max_partial(b(n, d), &o).unwrap();
            assert_eq!((r.status, r.best_size), (Status::Optimal, q), "({n},{d})");
            assert_eq!(r.witness.unwrap().len(), q);
        }
    }

    #[test]
    fn small_counts() {
        let o = SearchOptions::default();
        assert_eq!(count(4, 2, 4, &o), 2);
        assert_eq!(count(5, 2, 5, &o), 10);
        assert_eq!(count(6, 2, 6, &o), 4);
        assert_eq!(count(3, 3, 4, &o), 16);
        assert_eq!(count(2, 4, 1, &o), 16);
        assert_eq!(count(3, 2, 3, &o), 0);
        assert_eq!(count(3, 2, 2, &o), 8);
    }

    #[test]
    fn symmetry_reduced_counts_agree() {
        let plain = SearchOptions::default();
        let sym = SearchOptions { symmetry_reduction: true, ..Default::default() };
        for (n, d, k) in [(5, 2, 5), (6, 2, 6), (3, 3, 4), (4, 3, 6), (4, 3, 7), (4, 2, 2), (5, 3, 3)] {
            assert_eq!(count(n, d, k, &plain), count(n, d, k, &sym), "({n},{d}) k={k}");
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let one = SearchOptions { threads: 1, ..Default::default() };
        let four = SearchOptions { threads: 4, ..Default::default() };
        assert_eq!(count(6, 2, 6, &one), count(6, 2, 6, &four));
        assert_eq!(count(4, 3, 7, &one), count(4, 3, 7, &four));
        let a = max_partial(b(4, 3), &one).unwrap();
        let c = max_partial(b(4, 3), &four).unwrap();
        assert_eq!(a.best_size, c.best_size);
        assert_eq!(a.witness, c.witness);
    }

    #[test]
    fn completion_examples() {
        let o = SearchOptions::default();
        let board = b(3, 3);
        let center = Placement::new(board, vec![[2, 2, 2].into()]).unwrap();
        assert_eq!(complete(board, &center, 2, &o).unwrap().status, Status::Infeasible);
        assert_eq!(complete(board, &Placement::empty(board), 0, &o).unwrap().status, Status::Optimal);
        let bad = Placement::new(board, vec![[1, 1, 1].into(), [1, 1, 2].into()]).unwrap();
        assert!(matches!(complete(board, &bad, 3, &o), Err(Error::InvalidPlacement(1))));
    }

    #[test]
    fn limits_are_reported() {
        let o = SearchOptions { node_limit: Some(2000), ..Default::default() };
        let r = count_solutions(b(12, 2), 12, &o).unwrap();
        assert_eq!(r.status, Status::Limit);
        assert!(SearchOptions { time_limit: Some(-1.0), ..Default::default() }.validate().is_err());
        assert!(SearchOptions { node_limit: Some(0), ..Default::default() }.validate().is_err());
    }

    #[test]
    fn modular_counts() {
        let o = SearchOptions { modular: true, ..Default::default() };
        // the modular (n,2) problem is solvable exactly when gcd(n, 6) = 1
        assert_eq!(count(4, 2, 4, &o), 0);
        assert_eq!(count(5, 2, 5, &o), 10);
        assert_eq!(count(7, 2, 7, &o), 28);
    }

    #[test]
    fn count_serialization() {
        let mut r = SolveResult { status: Status::Optimal, best_size: 1, count: Some(BigUint::from(7u8)), witness: None, nodes: 0 };
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"count\":7"));
        assert_eq!(serde_json::from_str::<SolveResult>(&j).unwrap(), r);
        r.count = Some(BigUint::from(u64::MAX) * 3u8);
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"count\":\"55340232221128654845\""));
        assert_eq!(serde_json::from_str::<SolveResult>(&j).unwrap(), r);
    }
}
