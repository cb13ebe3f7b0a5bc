//! Integer programming models of the queens problems: the line model with
//! optional clique, layer, subsolution and odd-cycle cuts, domination
//! models, LP-format export and import, warmstarts, and evaluation.

mod cuts;
mod decide;
mod lp;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{attack_lines, attacked_squares, verify_certificate, BoardSpec, Placement, Square};
use crate::scalar::Scalar;

pub use cuts::{
    add_cube_cliques, add_layer_inequalities, add_odd_cycle_inequalities, add_star_cliques,
    add_subsolution_inequalities, chordless_odd_cycles,
};
pub use decide::{decide, root_bound, IpOutcome, IpStatus};
pub use lp::{export_lp, export_warmstart, parse_lp, parse_warmstart};

/// One binary variable per square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IpVariable {
    pub square: Square,
    pub name: String,
}

impl IpVariable {
    pub fn new(square: Square) -> Self {
        let name = variable_name(&square);
        IpVariable { square, name }
    }
}

pub(crate) fn variable_name(sq: &Square) -> String {
    let mut s = String::from("x");
    for c in sq.coords() {
        s.push('_');
        s.push_str(&c.to_string());
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }
}

/// Constraint families, in the order they appear in a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Base,
    Cube,
    Star,
    Layer,
    Subsol,
    OddCycle,
    Cover,
    Cardinality,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Base,
        Family::Cube,
        Family::Star,
        Family::Layer,
        Family::Subsol,
        Family::OddCycle,
        Family::Cover,
        Family::Cardinality,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Base => "base",
            Family::Cube => "cube",
            Family::Star => "star",
            Family::Layer => "layer",
            Family::Subsol => "subsol",
            Family::OddCycle => "oddcycle",
            Family::Cover => "cover",
            Family::Cardinality => "cardinality",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.tag() == tag)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `Σ_{v ∈ terms} x_v (sense) rhs`, all coefficients 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    /// `family[_qualifier]_ordinal`, the ordinal counting from 1 within the
    /// family.
    pub name: String,
    pub family: Family,
    pub qualifier: Option<String>,
    /// Variable indices, ascending and distinct.
    pub terms: Vec<usize>,
    pub sense: Sense,
    pub rhs: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Maximize,
    Minimize,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelMode {
    /// Maximize the number of queens.
    Max,
    /// Exactly `k` queens.
    Fixed(usize),
    /// Exactly `k` queens, built to be shown infeasible.
    Refute(usize),
    /// Minimize the number of queens (domination).
    Min,
}

impl ModelMode {
    pub fn cardinality(self) -> Option<usize> {
        match self {
            ModelMode::Fixed(k) | ModelMode::Refute(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for ModelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelMode::Max => write!(f, "max"),
            ModelMode::Fixed(k) => write!(f, "fixed:{k}"),
            ModelMode::Refute(k) => write!(f, "refute:{k}"),
            ModelMode::Min => write!(f, "min"),
        }
    }
}

impl std::str::FromStr for ModelMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown model mode {s:?} (expected max, min, fixed:K or refute:K)"));
        let k = |v: &str| v.parse::<usize>().map_err(|_| bad());
        match s.split_once(':') {
            None if s == "max" => Ok(ModelMode::Max),
            None if s == "min" => Ok(ModelMode::Min),
            Some(("fixed", v)) => Ok(ModelMode::Fixed(k(v)?)),
            Some(("refute", v)) => Ok(ModelMode::Refute(k(v)?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IpModel {
    pub board: BoardSpec,
    pub variables: Vec<IpVariable>,
    pub constraints: Vec<LinearConstraint>,
    pub objective: Objective,
    pub mode: ModelMode,
    pub warmstart: Option<Placement>,
}

impl IpModel {
    fn empty(board: BoardSpec, mode: ModelMode, objective: Objective) -> Self {
        let variables = board.squares().map(IpVariable::new).collect();
        IpModel { board, variables, constraints: Vec::new(), objective, mode, warmstart: None }
    }

    pub fn num_constraints(&self, family: Family) -> usize {
        self.constraints.iter().filter(|c| c.family == family).count()
    }

    pub fn constraints_of(&self, family: Family) -> impl Iterator<Item = &LinearConstraint> {
        self.constraints.iter().filter(move |c| c.family == family)
    }

    /// Appends a constraint to its family, keeping families in order.
    pub(crate) fn push(&mut self, family: Family, qualifier: Option<String>, terms: Vec<usize>, sense: Sense, rhs: u64) {
        let mut terms = terms;
        terms.sort_unstable();
        terms.dedup();
        let at = self.constraints.iter().position(|c| c.family > family).unwrap_or(self.constraints.len());
        let ordinal = self.num_constraints(family) + 1;
        let name = match &qualifier {
            Some(q) => format!("{}_{q}_{ordinal}", family.tag()),
            None => format!("{}_{ordinal}", family.tag()),
        };
        self.constraints.insert(at, LinearConstraint { name, family, qualifier, terms, sense, rhs });
    }

    /// Attaches a warmstart after checking that it is a valid placement on
    /// this board.
    pub fn set_warmstart(&mut self, p: Placement) -> Result<()> {
        check_placement(self.board, &p)?;
        self.warmstart = Some(p);
        Ok(())
    }

    pub(crate) fn index_of(&self, sq: &Square) -> usize {
        self.board.index_unchecked(sq.coords())
    }
}

fn check_placement(board: BoardSpec, p: &Placement) -> Result<()> {
    if p.board() != board {
        return Err(Error::InvalidArgument(format!("placement is on {}, model is on {board}", p.board())));
    }
    let conflicts = verify_certificate(p, false)?.conflicts().len();
    if conflicts > 0 {
        return Err(Error::InvalidPlacement(conflicts));
    }
    Ok(())
}

/// The line model: at most one queen on every attack line of length at least
/// two, plus the objective or cardinality row of `mode`. When the cardinality
/// is `n^(d−1)` every axis line must hold exactly one queen and those rows
/// become equalities.
pub fn build_base(board: BoardSpec, mode: ModelMode) -> Result<IpModel> {
    let objective = match mode {
        ModelMode::Max => Objective::Maximize,
        ModelMode::Min => {
            return Err(Error::InvalidArgument("the line model has no minimization mode".into()));
        }
        _ => Objective::None,
    };
    let mut model = IpModel::empty(board, mode, objective);
    let full = mode.cardinality().is_some_and(|k| k as u64 == board.full_size() as u64);
    for (dir, lines) in attack_lines(board) {
        let sense = if full && dir.is_axis() { Sense::Eq } else { Sense::Le };
        for line in lines {
            let terms = line.iter().map(|s| model.index_of(s)).collect();
            model.push(Family::Base, None, terms, sense, 1);
        }
    }
    if let Some(k) = mode.cardinality() {
        model.push(Family::Cardinality, None, (0..board.num_squares()).collect(), Sense::Eq, k as u64);
    }
    Ok(model)
}

/// Dominating-set model: every square is occupied or attacked. `mode` is
/// [`ModelMode::Min`] or a fixed size.
pub fn build_domination(board: BoardSpec, mode: ModelMode) -> Result<IpModel> {
    let objective = match mode {
        ModelMode::Min => Objective::Minimize,
        ModelMode::Fixed(_) => Objective::None,
        _ => return Err(Error::InvalidArgument("domination models are min or fixed:K".into())),
    };
    let mut model = IpModel::empty(board, mode, objective);
    for sq in board.squares() {
        let mut terms: Vec<usize> = attacked_squares(&sq, board, false)?.iter().map(|s| model.index_of(s)).collect();
        terms.push(model.index_of(&sq));
        model.push(Family::Cover, None, terms, Sense::Ge, 1);
    }
    if let Some(k) = mode.cardinality() {
        model.push(Family::Cardinality, None, (0..board.num_squares()).collect(), Sense::Eq, k as u64);
    }
    Ok(model)
}

/// Outcome of checking a point against a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Evaluation {
    Feasible,
    /// Names of the violated constraints, in model order.
    Violated(Vec<String>),
}

impl Evaluation {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Evaluation::Feasible)
    }

    pub fn violated(&self) -> &[String] {
        match self {
            Evaluation::Feasible => &[],
            Evaluation::Violated(v) => v,
        }
    }
}

/// Checks every constraint against the 0/1 point of `p`.
pub fn evaluate(model: &IpModel, p: &Placement) -> Result<Evaluation> {
    if p.board() != model.board {
        return Err(Error::InvalidArgument(format!("placement is on {}, model is on {}", p.board(), model.board)));
    }
    let on: BTreeSet<usize> = p.queens().iter().map(|q| model.index_of(q)).collect();
    let x: Vec<i64> = (0..model.variables.len()).map(|i| on.contains(&i) as i64).collect();
    evaluate_point(model, &x)
}

/// Checks every constraint at a point with coordinates in any [`Scalar`]
/// (`f64` up to a small tolerance, or exact rationals).
pub fn evaluate_point<S: Scalar>(model: &IpModel, x: &[S]) -> Result<Evaluation> {
    if x.len() != model.variables.len() {
        return Err(Error::DimensionMismatch { expected: model.variables.len(), got: x.len() });
    }
    let violated: Vec<String> = model
        .constraints
        .iter()
        .filter(|c| {
            let lhs = c.terms.iter().fold(S::zero(), |acc, &v| acc + x[v]);
            let rhs = <S as Scalar>::from_usize(c.rhs as usize);
            !match c.sense {
                Sense::Le => lhs.le_tol(rhs),
                Sense::Ge => rhs.le_tol(lhs),
                Sense::Eq => lhs.eq_tol(rhs),
            }
        })
        .map(|c| c.name.clone())
        .collect();
    Ok(if violated.is_empty() { Evaluation::Feasible } else { Evaluation::Violated(violated) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::attacks;
    use num_rational::Ratio;

    fn b(n: usize, d: usize) -> BoardSpec {
        BoardSpec::new(n, d).unwrap()
    }

    #[test]
    fn base_counts() {
        let m = build_base(b(8, 2), ModelMode::Max).unwrap();
        assert_eq!((m.constraints.len(), m.variables.len()), (42, 64));
        assert_eq!(build_base(b(2, 2), ModelMode::Max).unwrap().constraints.len(), 6);
        let r = build_base(b(11, 3), ModelMode::Refute(122)).unwrap();
        let card: Vec<_> = r.constraints_of(Family::Cardinality).collect();
        assert_eq!(card.len(), 1);
        assert_eq!((card[0].sense, card[0].rhs, card[0].terms.len()), (Sense::Eq, 122, 1331));
        assert_eq!(r.constraints.last().unwrap().name, "cardinality_1");
    }

    #[test]
    fn equalities_only_for_full_cardinality() {
        let max = build_base(b(8, 2), ModelMode::Max).unwrap();
        assert!(max.constraints.iter().all(|c| c.sense == Sense::Le));
        let full = build_base(b(8, 2), ModelMode::Fixed(8)).unwrap();
        assert_eq!(full.constraints.iter().filter(|c| c.sense == Sense::Eq).count(), 16 + 1);
        let partial = build_base(b(8, 2), ModelMode::Fixed(7)).unwrap();
        assert_eq!(partial.constraints.iter().filter(|c| c.sense == Sense::Eq).count(), 1);
    }

    #[test]
    fn names_and_order() {
        let mut m = build_base(b(3, 2), ModelMode::Fixed(2)).unwrap();
        add_star_cliques(&mut m);
        add_cube_cliques(&mut m);
        let fams: Vec<Family> = m.constraints.iter().map(|c| c.family).collect();
        let mut sorted = fams.clone();
        sorted.sort();
        assert_eq!(fams, sorted);
        assert_eq!(m.constraints_of(Family::Cube).next().unwrap().name, "cube_1");
        assert_eq!(m.constraints_of(Family::Star).next().unwrap().name, "star_1");
        assert_eq!(m.variables[5].name, "x_2_3");
        assert_eq!("refute:122".parse::<ModelMode>().unwrap(), ModelMode::Refute(122));
        assert!("refute".parse::<ModelMode>().is_err());
    }

    #[test]
    fn evaluation() {
        let board = b(4, 2);
        let m = build_base(board, ModelMode::Max).unwrap();
        let ok = Placement::new(board, vec![[1, 2].into(), [2, 4].into(), [3, 1].into(), [4, 3].into()]).unwrap();
        assert!(evaluate(&m, &ok).unwrap().is_feasible());
        let row = Placement::new(board, vec![[1, 1].into(), [1, 3].into()]).unwrap();
        let v = evaluate(&m, &row).unwrap();
        assert_eq!(v.violated().len(), 1);
        let c = m.constraints.iter().find(|c| c.name == v.violated()[0]).unwrap();
        assert_eq!(c.family, Family::Base);
    }

    #[test]
    fn uniform_point() {
        for (n, d) in [(3, 2), (3, 3), (5, 3), (7, 3), (4, 4)] {
            let mut m = build_base(b(n, d), ModelMode::Max).unwrap();
            let x = vec![Ratio::new(1i64, n as i64); m.variables.len()];
            assert!(evaluate_point(&m, &x).unwrap().is_feasible());
            let xf = vec![1.0 / n as f64; m.variables.len()];
            assert!(evaluate_point(&m, &xf).unwrap().is_feasible());
            add_cube_cliques(&mut m);
            assert!(!evaluate_point(&m, &x).unwrap().is_feasible(), "({n},{d})");
            assert!(!evaluate_point(&m, &xf).unwrap().is_feasible());
        }
    }

    #[test]
    fn domination_model() {
        let board = b(3, 3);
        let m = build_domination(board, ModelMode::Min).unwrap();
        assert_eq!(m.num_constraints(Family::Cover), 27);
        let center = Placement::new(board, vec![[2, 2, 2].into()]).unwrap();
        assert!(evaluate(&m, &center).unwrap().is_feasible());
        let corner = Placement::new(board, vec![[1, 1, 1].into()]).unwrap();
        assert!(!evaluate(&m, &corner).unwrap().is_feasible());
        for (i, c) in m.constraints_of(Family::Cover).enumerate() {
            let sq = &m.variables[i].square;
            let expected: Vec<usize> = (0..27).filter(|&t| t == i || attacks(&m.variables[t].square, sq, board).unwrap()).collect();
            assert_eq!(c.terms, expected);
        }
        assert!(build_domination(board, ModelMode::Max).is_err());
    }
}
