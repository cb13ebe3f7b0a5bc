use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{Family, IpModel, Sense};
use crate::error::{Error, Result};
use crate::geometry::{Placement, Square};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IpStatus {
    Feasible,
    Infeasible,
    Limit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IpOutcome {
    pub status: IpStatus,
    pub solution: Option<Placement>,
    pub nodes: u64,
    /// Packing bound on the number of queens at the root.
    pub root_bound: u64,
    /// Rows whose disjoint parts give the root bound.
    pub root_rows: Vec<String>,
}

/// Upper bound on `Σ x` valid for the LP relaxation: the variables are split
/// greedily into disjoint parts of `≤` rows (in model order), each part
/// contributing at most the row's right-hand side; variables in no such row
/// count one each. Returns the bound and the rows used.
pub fn root_bound(model: &IpModel) -> (u64, Vec<String>) {
    let mut taken = vec![false; model.variables.len()];
    let mut bound = 0u64;
    let mut rows = Vec::new();
    for c in model.constraints.iter().filter(|c| c.sense != Sense::Ge && c.family != Family::Cardinality) {
        let fresh = c.terms.iter().filter(|&&v| !taken[v]).count() as u64;
        if fresh == 0 {
            continue;
        }
        for &v in &c.terms {
            taken[v] = true;
        }
        bound += fresh.min(c.rhs);
        rows.push(c.name.clone());
    }
    bound += taken.iter().filter(|&&t| !t).count() as u64;
    (bound, rows)
}

/// Decides a model with a cardinality row by branch and bound over the 0/1
/// variables, with row propagation and the packing bound at every node.
pub fn decide(model: &IpModel, node_limit: Option<u64>, time_limit: Option<f64>) -> Result<IpOutcome> {
    let Some(k) = model.mode.cardinality() else {
        return Err(Error::InvalidArgument(format!("model mode {} has no cardinality row", model.mode)));
    };
    let (root, root_rows) = root_bound(model);
    let mut s = Search::new(model, k as u64, node_limit, time_limit.map(|t| Instant::now() + Duration::from_secs_f64(t)));
    let status = if root < k as u64 || !s.propagate_all() {
        IpStatus::Infeasible
    } else {
        match s.rec() {
            Some(true) => IpStatus::Feasible,
            Some(false) => IpStatus::Infeasible,
            None => IpStatus::Limit,
        }
    };
    let solution = (status == IpStatus::Feasible).then(|| {
        let queens = (0..model.variables.len())
            .filter(|&v| s.value[v] == 1)
            .map(|v| Square::new(model.variables[v].square.coords().to_vec()))
            .collect();
        Placement::new(model.board, queens)
    });
    Ok(IpOutcome { status, solution: solution.transpose()?, nodes: s.nodes, root_bound: root, root_rows })
}

struct Search<'a> {
    model: &'a IpModel,
    rows_of: Vec<Vec<usize>>,
    value: Vec<i8>,
    ones: Vec<u64>,
    free: Vec<u64>,
    trail: Vec<usize>,
    total_ones: u64,
    k: u64,
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'a> Search<'a> {
    fn new(model: &'a IpModel, k: u64, node_limit: Option<u64>, deadline: Option<Instant>) -> Self {
        let nv = model.variables.len();
        let mut rows_of = vec![Vec::new(); nv];
        for (r, c) in model.constraints.iter().enumerate() {
            for &v in &c.terms {
                rows_of[v].push(r);
            }
        }
        let free = model.constraints.iter().map(|c| c.terms.len() as u64).collect();
        Search {
            model,
            rows_of,
            value: vec![-1; nv],
            ones: vec![0; model.constraints.len()],
            free,
            trail: Vec::new(),
            total_ones: 0,
            k,
            nodes: 0,
            node_limit,
            deadline,
            stamp: vec![0; nv],
            epoch: 0,
        }
    }

    fn assign(&mut self, v: usize, val: i8) {
        self.value[v] = val;
        self.trail.push(v);
        for &r in &self.rows_of[v] {
            self.free[r] -= 1;
            if val == 1 {
                self.ones[r] += 1;
            }
        }
        if val == 1 {
            self.total_ones += 1;
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("nonempty");
            let val = self.value[v];
            for &r in &self.rows_of[v] {
                self.free[r] += 1;
                if val == 1 {
                    self.ones[r] -= 1;
                }
            }
            if val == 1 {
                self.total_ones -= 1;
            }
            self.value[v] = -1;
        }
    }

    /// Forces values implied by tight rows until a fixpoint; false on a
    /// violated row.
    fn propagate_from(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(r) = queue.pop() {
            let c = &self.model.constraints[r];
            let (ones, free) = (self.ones[r], self.free[r]);
            let max_ok = c.sense == Sense::Ge || ones <= c.rhs;
            let min_ok = c.sense == Sense::Le || ones + free >= c.rhs;
            if !max_ok || !min_ok {
                return false;
            }
            let force = if c.sense != Sense::Ge && ones == c.rhs && free > 0 {
                Some(0)
            } else if c.sense != Sense::Le && ones + free == c.rhs && free > 0 {
                Some(1)
            } else {
                None
            };
            if let Some(val) = force {
                for &v in &c.terms {
                    if self.value[v] == -1 {
                        self.assign(v, val);
                        queue.extend(self.rows_of[v].iter().copied());
                    }
                }
            }
        }
        true
    }

    fn propagate_all(&mut self) -> bool {
        self.propagate_from((0..self.model.constraints.len()).collect())
    }

    fn bound(&mut self) -> u64 {
        self.epoch += 1;
        let epoch = self.epoch;
        let mut bound = self.total_ones;
        for (r, c) in self.model.constraints.iter().enumerate() {
            if c.sense == Sense::Ge || c.family == Family::Cardinality || self.free[r] == 0 {
                continue;
            }
            let mut fresh = 0;
            for &v in &c.terms {
                if self.value[v] == -1 && self.stamp[v] != epoch {
                    self.stamp[v] = epoch;
                    fresh += 1;
                }
            }
            bound += fresh.min(c.rhs - self.ones[r].min(c.rhs));
        }
        bound + (0..self.value.len()).filter(|&v| self.value[v] == -1 && self.stamp[v] != epoch).count() as u64
    }

    /// `Some(true)` when a solution is found, `Some(false)` when the subtree
    /// is infeasible, `None` at a limit.
    fn rec(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) || (self.nodes & 255 == 0 && self.deadline.is_some_and(|t| Instant::now() >= t)) {
            return None;
        }
        if self.bound() < self.k {
            return Some(false);
        }
        let Some(v) = (0..self.value.len()).find(|&v| self.value[v] == -1) else {
            return Some(self.total_ones == self.k);
        };
        for val in [1, 0] {
            let mark = self.trail.len();
            self.assign(v, val);
            let rows = self.rows_of[v].clone();
            if self.propagate_from(rows) {
                match self.rec() {
                    Some(false) => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{verify_certificate, BoardSpec};
    use crate::ipmodel::{build_base, build_domination, ModelMode};

    fn b(n: usize, d: usize) -> BoardSpec {
        BoardSpec::new(n, d).unwrap()
    }

    #[test]
    fn small_decisions() {
        let cases = [(4, 2, 4, IpStatus::Feasible), (3, 2, 3, IpStatus::Infeasible), (4, 3, 7, IpStatus::Feasible), (4, 3, 8, IpStatus::Infeasible), (3, 3, 5, IpStatus::Infeasible)];
        for (n, d, k, want) in cases {
            let m = build_base(b(n, d), ModelMode::Fixed(k)).unwrap();
            let out = decide(&m, None, None).unwrap();
            assert_eq!(out.status, want, "({n},{d}) k={k}");
            if let Some(p) = out.solution {
                assert_eq!(p.len(), k);
                assert!(verify_certificate(&p, false).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn refutation_at_the_root() {
        let m = build_base(b(11, 3), ModelMode::Refute(122)).unwrap();
        let (bound, rows) = root_bound(&m);
        assert_eq!(bound, 121);
        assert_eq!(rows.len(), 121);
        let out = decide(&m, Some(1), None).unwrap();
        assert_eq!((out.status, out.nodes), (IpStatus::Infeasible, 0));
    }

    #[test]
    fn domination_decisions() {
        let m = build_domination(b(3, 3), ModelMode::Fixed(1)).unwrap();
        let out = decide(&m, None, None).unwrap();
        assert_eq!(out.status, IpStatus::Feasible);
        assert_eq!(out.solution.unwrap().queens()[0], [2, 2, 2].into());
        let m = build_domination(b(4, 2), ModelMode::Fixed(1)).unwrap();
        assert_eq!(decide(&m, None, None).unwrap().status, IpStatus::Infeasible);
        let max = build_base(b(4, 2), ModelMode::Max).unwrap();
        assert!(decide(&max, None, None).is_err());
    }
}
