//! Bitset branch and bound over the queen graph.
//!
//! Squares are relabelled by descending degree (ties by linear index) so that
//! iterating a bitset visits high-degree squares first. Two branching rules
//! are used: greedy clique colouring (each colour class is a clique of the
//! queen graph, so the number of classes bounds the independent set) when the
//! target leaves slack, and axis-line branching (place one of the candidates
//! of the tightest line, or leave the line empty) when the target is close to
//! the number of axis lines.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::geometry::attack::{attacks_coords, modular_attacks_coords};
use crate::geometry::{attack_directions, orbit_representative, BoardSpec, LineIndex, Square};

/// Largest board the exhaustive engine accepts.
pub(crate) const MAX_SEARCH_SQUARES: usize = 1 << 15;

/// Covers are re-evaluated down to this many placed queens.
const COVER_DEPTH: usize = 4;

struct Cover {
    part: Vec<u32>,
    parts: usize,
}

pub(crate) struct Engine {
    pub board: BoardSpec,
    pub len: usize,
    /// Closed neighbourhoods over internal ids.
    pub nbr: Vec<Bitset>,
    /// Internal id to linear index.
    pub square: Vec<usize>,
    /// Linear index to internal id.
    pub internal: Vec<usize>,
    covers: Vec<Cover>,
    /// Axis line bitsets; line `a * per_axis + j` runs along axis `a`.
    axis_lines: Vec<Bitset>,
    axis_line_of: Vec<Vec<u32>>,
    per_axis: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    Decide,
    Count,
    Visit,
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Limits {
    pub node_limit: Option<u64>,
    pub deadline: Option<Instant>,
}

pub(crate) struct Task {
    chosen: Vec<usize>,
    avail: Bitset,
    /// Orbit whose members are counted in each solution (symmetry-reduced
    /// counting) and the orbit's size.
    orbit: Option<(Bitset, usize)>,
}

#[derive(Debug)]
pub(crate) struct RunOutcome {
    /// Linear indices of the first solution in task order.
    pub found: Option<Vec<usize>>,
    pub count: BigUint,
    pub complete: bool,
    pub nodes: u64,
}

struct Shared<'v> {
    nodes: AtomicU64,
    aborted: AtomicBool,
    first_hit: AtomicUsize,
    limits: Limits,
    goal: Goal,
    line_mode: bool,
    visitor: Option<&'v (dyn Fn(&[usize]) + Sync)>,
    found: Mutex<Option<(usize, Vec<usize>)>>,
}

impl Engine {
    pub fn new(board: BoardSpec, modular: bool) -> Result<Self> {
        let len = board.num_squares();
        if len > MAX_SEARCH_SQUARES {
            return Err(Error::SearchTooLarge(len));
        }
        let (n, d) = (board.n(), board.d());
        let dirs = attack_directions(d);
        let lines = (dirs.len() * len <= 1 << 22).then(|| LineIndex::new(board, modular, dirs));
        let mut lin_nbr = vec![Bitset::new(len); len];
        match &lines {
            Some(index) => {
                for line in &index.lines {
                    for &u in line {
                        for &v in line {
                            lin_nbr[u as usize].insert(v as usize);
                        }
                    }
                }
            }
            None => {
                let coords: Vec<Vec<usize>> = (0..len).map(|i| board.coords_of(i)).collect();
                for u in 0..len {
                    for v in 0..len {
                        let hit = if modular {
                            modular_attacks_coords(&coords[u], &coords[v], n)
                        } else {
                            attacks_coords(&coords[u], &coords[v])
                        };
                        if hit {
                            lin_nbr[u].insert(v);
                        }
                    }
                }
            }
        }
        let mut square: Vec<usize> = (0..len).collect();
        let degree: Vec<usize> = lin_nbr.iter().map(Bitset::count).collect();
        square.sort_by_key(|&i| (std::cmp::Reverse(degree[i]), i));
        let mut internal = vec![0; len];
        for (id, &s) in square.iter().enumerate() {
            internal[s] = id;
        }
        let nbr: Vec<Bitset> = square
            .iter()
            .map(|&s| Bitset::from_indices(len, lin_nbr[s].iter().map(|t| internal[t])))
            .collect();

        let per_axis = len / n;
        let mut covers = Vec::new();
        let mut axis_lines = vec![Bitset::new(len); d * per_axis];
        let mut axis_line_of = Vec::with_capacity(d);
        for a in 0..d {
            let mut part = vec![0u32; len];
            for (id, &s) in square.iter().enumerate() {
                let c = board.coords_of(s);
                let key = c.iter().enumerate().filter(|&(i, _)| i != a).fold(0, |acc, (_, &x)| acc * n + x - 1);
                part[id] = key as u32;
                axis_lines[a * per_axis + key].insert(id);
            }
            axis_line_of.push(part.clone());
            covers.push(Cover { part, parts: per_axis });
        }
        if let Some(index) = lines.as_ref().filter(|_| d <= 3) {
            for k in 0..index.dirs.len() {
                if index.dirs[k].is_axis() {
                    continue;
                }
                let base = index.dir_start[k] as u32;
                let part = square.iter().map(|&s| index.line_of[k][s] - base).collect();
                covers.push(Cover { part, parts: index.num_lines_of_dir(k) });
            }
        }
        if n >= 3 && d <= 6 {
            for offset in 0..1usize << d {
                let sizes: Vec<usize> = (0..d).map(|i| (n - 1 + (offset >> i & 1)) / 2 + 1).collect();
                let part = square
                    .iter()
                    .map(|&s| {
                        let c = board.coords_of(s);
                        (0..d).fold(0, |acc, i| acc * sizes[i] + (c[i] - 1 + (offset >> i & 1)) / 2) as u32
                    })
                    .collect();
                covers.push(Cover { part, parts: sizes.iter().product() });
            }
        }
        Ok(Engine { board, len, nbr, square, internal, covers, axis_lines, axis_line_of, per_axis })
    }

    pub fn full(&self) -> Bitset {
        Bitset::full(self.len)
    }

    /// Minimum over all clique covers of the number of parts meeting `p`.
    pub fn cover_bound(&self, p: &Bitset) -> usize {
        let mut stamp = Vec::new();
        self.cover_bound_with(p, 0, &mut stamp)
    }

    fn cover_bound_with(&self, p: &Bitset, stop_below: usize, stamp: &mut Vec<u32>) -> usize {
        let mut best = usize::MAX;
        for cover in &self.covers {
            stamp.clear();
            stamp.resize(cover.parts, 0);
            let mut hit = 0;
            for v in p.iter() {
                let q = cover.part[v] as usize;
                if stamp[q] == 0 {
                    stamp[q] = 1;
                    hit += 1;
                }
            }
            best = best.min(hit);
            if best < stop_below {
                break;
            }
        }
        best
    }

    /// Number of cliques in a greedy clique partition of `p`.
    pub fn color_bound(&self, p: &Bitset) -> usize {
        let mut classes: Vec<Bitset> = Vec::new();
        for v in p.iter() {
            match classes.iter_mut().find(|c| c.contains(v)) {
                Some(c) => c.intersect_with(&self.nbr[v]),
                None => classes.push(self.nbr[v].clone()),
            }
        }
        classes.len()
    }

    /// Whether a target of `k` queens should use axis-line branching.
    pub fn prefers_lines(&self, k: usize) -> bool {
        let cap = self.per_axis;
        k <= cap && 4 * (cap - k) <= k
    }

    /// Greedy independent set: repeatedly the available square with the
    /// fewest available neighbours (ties by internal id). Linear indices.
    pub fn greedy(&self, start: &[usize]) -> Vec<usize> {
        let mut p = self.full();
        let mut chosen: Vec<usize> = start.iter().map(|&s| self.internal[s]).collect();
        for &v in &chosen {
            p.difference_with(&self.nbr[v]);
        }
        while !p.is_empty() {
            let v = p.iter().min_by_key(|&v| (p.intersection_count(&self.nbr[v]), v)).expect("nonempty");
            chosen.push(v);
            p.difference_with(&self.nbr[v]);
        }
        let mut out: Vec<usize> = chosen.into_iter().map(|v| self.square[v]).collect();
        out.sort_unstable();
        out
    }

    /// Available squares after placing `start` (linear indices), or `None`
    /// when `start` is not independent.
    pub fn avail_after(&self, start: &[usize]) -> Option<Bitset> {
        let mut p = self.full();
        for &s in start {
            let v = self.internal[s];
            if !p.contains(v) {
                return None;
            }
            p.difference_with(&self.nbr[v]);
        }
        Some(p)
    }

    /// One task per smallest internal id of the solution, after `start`.
    pub fn plain_tasks(&self, start: &[usize], avail: &Bitset) -> Vec<Task> {
        let base: Vec<usize> = start.iter().map(|&s| self.internal[s]).collect();
        let mut tasks = Vec::new();
        let mut rest = avail.clone();
        for v in avail.iter() {
            rest.remove(v);
            let mut a = rest.clone();
            a.difference_with(&self.nbr[v]);
            let mut chosen = base.clone();
            chosen.push(v);
            tasks.push(Task { chosen, avail: a, orbit: None });
        }
        tasks
    }

    /// One task per orbit of squares under the board symmetries: task `i`
    /// places the orbit representative and forbids all earlier orbits.
    pub fn orbit_tasks(&self) -> Vec<Task> {
        let n = self.board.n();
        let mut orbits: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
        for s in 0..self.len {
            let rep = orbit_representative(&Square::new(self.board.coords_of(s)), n);
            orbits.entry(rep.into_coords()).or_default().push(self.internal[s]);
        }
        let mut list: Vec<(Vec<usize>, Vec<usize>)> = orbits.into_iter().collect();
        list.sort_by_key(|(rep, members)| (std::cmp::Reverse(members.len()), rep.clone()));
        let mut forbidden = Bitset::new(self.len);
        let mut tasks = Vec::new();
        for (rep, members) in list {
            let r = self.internal[self.board.index_unchecked(&rep)];
            let orbit = Bitset::from_indices(self.len, members.iter().copied());
            let mut avail = self.full();
            avail.difference_with(&self.nbr[r]);
            avail.difference_with(&forbidden);
            tasks.push(Task { chosen: vec![r], avail, orbit: Some((orbit.clone(), members.len())) });
            forbidden.union_with(&orbit);
        }
        tasks
    }

    /// Runs every task for solutions of exactly `k` queens in total.
    pub fn run(
        &self,
        tasks: &[Task],
        k: usize,
        goal: Goal,
        limits: Limits,
        threads: usize,
        visitor: Option<&(dyn Fn(&[usize]) + Sync)>,
    ) -> RunOutcome {
        let shared = Shared {
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            first_hit: AtomicUsize::new(usize::MAX),
            limits,
            goal,
            line_mode: self.prefers_lines(k),
            visitor,
            found: Mutex::new(None),
        };
        let work = |(i, task): (usize, &Task)| -> BigRational {
            if goal == Goal::Decide && shared.first_hit.load(Ordering::Relaxed) < i {
                return BigRational::zero();
            }
            self.run_task(&shared, i, task, k)
        };
        let counts: Vec<BigRational> = if threads <= 1 {
            tasks.iter().enumerate().map(work).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
            pool.install(|| tasks.par_iter().enumerate().map(work).collect())
        };
        let total: BigRational = counts.into_iter().fold(BigRational::zero(), |a, b| a + b);
        debug_assert!(total.is_integer());
        let count = total.to_integer().to_biguint().unwrap_or_default();
        let found = shared.found.into_inner().expect("no poisoned lock").map(|(_, mut w)| {
            w.sort_unstable();
            w
        });
        let aborted = shared.aborted.load(Ordering::Relaxed);
        let complete = !aborted || (goal == Goal::Decide && found.is_some());
        RunOutcome { found, count, complete, nodes: shared.nodes.load(Ordering::Relaxed) }
    }

    fn run_task(&self, shared: &Shared, index: usize, task: &Task, k: usize) -> BigRational {
        if task.chosen.len() > k {
            return BigRational::zero();
        }
        let mult = task.orbit.as_ref().map_or(0, |(o, _)| task.chosen.iter().filter(|&&v| o.contains(v)).count());
        let mut w = Worker {
            eng: self,
            shared,
            index,
            local_nodes: 0,
            stamp: Vec::new(),
            counts: vec![0; k + 2],
            chosen: task.chosen.clone(),
            orbit: task.orbit.as_ref().map(|(o, _)| o),
            mult,
            stopped: false,
            first: None,
        };
        let need = k - task.chosen.len();
        let depth = task.chosen.len();
        if shared.line_mode {
            w.lines(&task.avail, need, depth);
        } else {
            w.mcs(&task.avail, need, depth);
        }
        shared.nodes.fetch_add(w.local_nodes & 1023, Ordering::Relaxed);
        if let Some(first) = w.first.take() {
            let mut found = shared.found.lock().expect("no poisoned lock");
            if found.as_ref().is_none_or(|(i, _)| index < *i) {
                *found = Some((index, first));
            }
        }
        let size = task.orbit.as_ref().map_or(1, |(_, s)| *s);
        let mut total = BigRational::zero();
        for (m, &c) in w.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = BigInt::from(c);
            total += match task.orbit {
                Some(_) => BigRational::new(c * BigInt::from(size), BigInt::from(m.max(1))),
                None => BigRational::from_integer(c),
            };
        }
        total
    }
}

struct Worker<'a, 'v> {
    eng: &'a Engine,
    shared: &'a Shared<'v>,
    index: usize,
    local_nodes: u64,
    stamp: Vec<u32>,
    /// Solutions found, by the number of members in the task's orbit.
    counts: Vec<u128>,
    chosen: Vec<usize>,
    orbit: Option<&'a Bitset>,
    mult: usize,
    stopped: bool,
    first: Option<Vec<usize>>,
}

impl Worker<'_, '_> {
    /// Counts a node; returns true when the search must stop.
    #[inline]
    fn tick(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        self.local_nodes += 1;
        if self.local_nodes & 1023 == 0 {
            let total = self.shared.nodes.fetch_add(1024, Ordering::Relaxed) + 1024;
            let lim = &self.shared.limits;
            let over = lim.node_limit.is_some_and(|l| total > l) || lim.deadline.is_some_and(|t| Instant::now() >= t);
            if over {
                self.shared.aborted.store(true, Ordering::Relaxed);
            }
            let superseded =
                self.shared.goal == Goal::Decide && self.shared.first_hit.load(Ordering::Relaxed) < self.index;
            if over || superseded || self.shared.aborted.load(Ordering::Relaxed) {
                self.stopped = true;
            }
        }
        self.stopped
    }

    fn push(&mut self, v: usize) {
        self.chosen.push(v);
        if self.orbit.is_some_and(|o| o.contains(v)) {
            self.mult += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.chosen.pop().expect("nonempty");
        if self.orbit.is_some_and(|o| o.contains(v)) {
            self.mult -= 1;
        }
    }

    /// Records the current set; returns true when the search must stop.
    fn solution(&mut self) -> bool {
        match self.shared.goal {
            Goal::Decide => {
                let mut found = self.shared.found.lock().expect("no poisoned lock");
                if found.as_ref().is_none_or(|(i, _)| self.index < *i) {
                    let w = self.chosen.iter().map(|&v| self.eng.square[v]).collect();
                    *found = Some((self.index, w));
                    self.shared.first_hit.fetch_min(self.index, Ordering::Relaxed);
                }
                self.stopped = true;
                true
            }
            Goal::Count | Goal::Visit => {
                if self.first.is_none() {
                    self.first = Some(self.chosen.iter().map(|&v| self.eng.square[v]).collect());
                }
                self.counts[self.mult] += 1;
                if let Some(f) = self.shared.visitor {
                    let mut w: Vec<usize> = self.chosen.iter().map(|&v| self.eng.square[v]).collect();
                    w.sort_unstable();
                    f(&w);
                }
                false
            }
        }
    }

    /// Adds every single-square completion of the current set in `p`.
    fn count_last(&mut self, p: &Bitset) -> bool {
        if self.shared.goal == Goal::Visit || self.first.is_none() {
            let Some(v) = p.first() else { return false };
            let mut rest = p.clone();
            rest.remove(v);
            self.push(v);
            let stop = self.solution();
            self.pop();
            return stop || self.count_last_bulk(&rest);
        }
        self.count_last_bulk(p)
    }

    fn count_last_bulk(&mut self, p: &Bitset) -> bool {
        if self.shared.goal == Goal::Visit {
            for v in p.iter() {
                self.push(v);
                self.solution();
                self.pop();
            }
            return false;
        }
        match self.orbit {
            Some(o) => {
                let inside = p.intersection_count(o);
                self.counts[self.mult + 1] += inside as u128;
                self.counts[self.mult] += (p.count() - inside) as u128;
            }
            None => self.counts[self.mult] += p.count() as u128,
        }
        false
    }

    fn mcs(&mut self, p: &Bitset, need: usize, depth: usize) -> bool {
        if self.tick() {
            return true;
        }
        if need == 0 {
            return self.solution();
        }
        if need == 1 && self.shared.goal != Goal::Decide {
            return self.count_last(p);
        }
        if depth <= COVER_DEPTH && self.eng.cover_bound_with(p, need, &mut self.stamp) < need {
            return false;
        }
        let eng = self.eng;
        let mut classes: Vec<Bitset> = Vec::new();
        let mut colored: Vec<(usize, usize)> = Vec::new();
        for v in p.iter() {
            match classes.iter().position(|c| c.contains(v)) {
                Some(c) => {
                    classes[c].intersect_with(&eng.nbr[v]);
                    colored.push((c + 1, v));
                }
                None => {
                    classes.push(eng.nbr[v].clone());
                    colored.push((classes.len(), v));
                }
            }
        }
        if classes.len() < need {
            return false;
        }
        colored.sort_by_key(|&(c, _)| c);
        let mut rest = p.clone();
        let mut child = Bitset::new(eng.len);
        for &(color, v) in colored.iter().rev() {
            if color < need {
                break;
            }
            child.assign_difference(&rest, &eng.nbr[v]);
            self.push(v);
            let stop = self.mcs(&child, need - 1, depth + 1);
            self.pop();
            if stop {
                return true;
            }
            rest.remove(v);
        }
        false
    }

    fn lines(&mut self, p: &Bitset, need: usize, depth: usize) -> bool {
        if self.tick() {
            return true;
        }
        if need == 0 {
            return self.solution();
        }
        if need == 1 && self.shared.goal != Goal::Decide {
            return self.count_last(p);
        }
        let eng = self.eng;
        let d = eng.axis_line_of.len();
        let mut counts = vec![0u32; d * eng.per_axis];
        let mut hits = vec![0usize; d];
        for v in p.iter() {
            for a in 0..d {
                let id = a * eng.per_axis + eng.axis_line_of[a][v] as usize;
                if counts[id] == 0 {
                    hits[a] += 1;
                }
                counts[id] += 1;
            }
        }
        if hits.iter().any(|&h| h < need) {
            return false;
        }
        if depth <= COVER_DEPTH && eng.cover_bound_with(p, need, &mut self.stamp) < need {
            return false;
        }
        let (line, _) = counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .min_by_key(|&(i, &c)| (c, i))
            .expect("nonempty");
        let mut cand = p.clone();
        cand.intersect_with(&eng.axis_lines[line]);
        let mut child = Bitset::new(eng.len);
        for v in cand.iter() {
            child.assign_difference(p, &eng.nbr[v]);
            self.push(v);
            let stop = self.lines(&child, need - 1, depth + 1);
            self.pop();
            if stop {
                return true;
            }
        }
        child.assign_difference(p, &eng.axis_lines[line]);
        self.lines(&child, need, depth)
    }
}

