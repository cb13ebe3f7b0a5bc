use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{subcube_formula, BoundsRecord};
use crate::error::{Error, Result};
use crate::geometry::{verify_certificate, BoardSpec, Placement, Square};

/// Shifts `p` cyclically by `shifts[i]` in dimension `i`, then keeps the
/// queens inside the first `n − k` positions of every dimension, giving a
/// placement on `(n − k, d)`.
pub fn crop(p: &Placement, k: usize, shifts: &[i64]) -> Result<Placement> {
    let board = p.board();
    let (n, d) = (board.n(), board.d());
    if k >= n {
        return Err(Error::OutOfRange(format!("cannot remove {k} layers from a board of size {n}")));
    }
    if shifts.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: shifts.len() });
    }
    let conflicts = verify_certificate(p, true)?.conflicts().len();
    if conflicts > 0 {
        return Err(Error::InvalidPlacement(conflicts));
    }
    let target = BoardSpec::new(n - k, d)?;
    let shifts: Vec<usize> = shifts.iter().map(|&s| s.rem_euclid(n as i64) as usize).collect();
    let queens = p.queens().iter().filter_map(|q| shifted(q.coords(), &shifts, n, n - k)).collect();
    Placement::new(target, queens)
}

fn shifted(c: &[usize], shifts: &[usize], n: usize, m: usize) -> Option<Square> {
    c.iter()
        .zip(shifts)
        .map(|(&x, &s)| {
            let y = (x - 1 + s) % n;
            (y < m).then_some(y + 1)
        })
        .collect::<Option<Vec<_>>>()
        .map(Square::new)
}

/// The largest crop onto `(n_target, d)` over every source larger than the
/// target and every shift vector. Ties go to the lexicographically smallest
/// witness.
pub fn best_crop(n_target: usize, d: usize, sources: &[Placement]) -> Result<BoundsRecord> {
    let usable: Vec<&Placement> = sources.iter().filter(|p| p.board().d() == d && p.board().n() > n_target).collect();
    if usable.is_empty() {
        return Err(Error::InvalidArgument(format!("no source larger than ({n_target},{d})")));
    }
    for p in &usable {
        let conflicts = verify_certificate(p, true)?.conflicts().len();
        if conflicts > 0 {
            return Err(Error::InvalidPlacement(conflicts));
        }
    }
    let target = BoardSpec::new(n_target, d)?;
    let jobs: Vec<(usize, usize)> =
        usable.iter().enumerate().flat_map(|(i, p)| (0..p.board().n()).map(move |s| (i, s))).collect();
    let (size, ties) = jobs
        .par_iter()
        .map(|&(i, s0)| {
            let (size, shifts) = search_source(usable[i], n_target, s0);
            (size, shifts.into_iter().map(|s| (i, s)).collect::<Vec<_>>())
        })
        .reduce(|| (0, Vec::new()), merge);
    let (i, shifts) = smallest_witness(&usable, n_target, ties);
    let witness = cropped(usable[i], n_target, &shifts);
    let witness = Placement::new(target, witness)?;
    debug_assert_eq!(witness.len(), size);
    let n = usable[i].board().n();
    let method = format!("crop:n={},k={},shift={:?}", n, n - n_target, shifts);
    Ok(BoundsRecord {
        n: n_target,
        d,
        lower: size as u64,
        upper: (n_target as u64).pow(d as u32 - 1),
        lower_method: method,
        upper_method: "lines".into(),
        witness: Some(witness),
    })
}

type Ties = (usize, Vec<(usize, Vec<usize>)>);

fn merge(mut a: Ties, b: Ties) -> Ties {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Equal => {
            a.1.extend(b.1);
            a
        }
    }
}

/// Queens of `p` shifted by `shifts` (mod n) that land in `[1, m]^d`, sorted.
fn cropped(p: &Placement, m: usize, shifts: &[usize]) -> Vec<Square> {
    let n = p.board().n();
    let mut out: Vec<Square> = p.queens().iter().filter_map(|q| shifted(q.coords(), shifts, n, m)).collect();
    out.sort();
    out
}

/// Linear indices on `(m, d)` of the queens of `p` kept by `shifts`.
fn cropped_indices<'a>(p: &'a Placement, m: usize, shifts: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    let n = p.board().n();
    p.queens().iter().filter_map(move |q| {
        q.coords().iter().zip(shifts).try_fold(0, |acc, (&x, &s)| {
            let y = (x - 1 + s) % n;
            (y < m).then_some(acc * m + y)
        })
    })
}

/// Candidates left when witnesses are compared by full sorting.
const SORT_CANDIDATES: usize = 1024;

/// The tie whose crop is the lexicographically smallest placement, then the
/// earliest source and the smallest shifts. Candidates are narrowed one
/// element of the sorted witness at a time until few remain.
fn smallest_witness(sources: &[&Placement], m: usize, mut ties: Vec<(usize, Vec<usize>)>) -> (usize, Vec<usize>) {
    let mut floor: Option<usize> = None;
    while ties.len() > SORT_CANDIDATES {
        let next = |(i, s): &(usize, Vec<usize>)| {
            cropped_indices(sources[*i], m, s).filter(|&v| floor.is_none_or(|f| v > f)).min()
        };
        let keys: Vec<Option<usize>> = ties.par_iter().map(next).collect();
        let best = keys.iter().copied().min().flatten();
        let Some(best) = best else { break };
        ties = ties.into_iter().zip(keys).filter(|(_, k)| *k == Some(best)).map(|(t, _)| t).collect();
        floor = Some(best);
    }
    ties.into_par_iter()
        .map(|(i, s)| {
            let mut w: Vec<usize> = cropped_indices(sources[i], m, &s).collect();
            w.sort_unstable();
            (w, i, s)
        })
        .min()
        .map(|(_, i, s)| (i, s))
        .expect("every source has a shift")
}

/// Largest crop of one source with the first shift fixed to `s0`, and every
/// shift vector reaching it.
fn search_source(p: &Placement, m: usize, s0: usize) -> (usize, Vec<Vec<usize>>) {
    let n = p.board().n();
    let d = p.board().d();
    let coords: Vec<&[usize]> = p.queens().iter().map(|q| q.coords()).collect();
    let keep: Vec<u32> = (0..coords.len() as u32).filter(|&q| (coords[q as usize][0] - 1 + s0) % n < m).collect();
    let mut state = Sweep { coords: &coords, n, m, d, shifts: vec![s0], best: 0, ties: Vec::new() };
    state.rec(&keep);
    (state.best, state.ties)
}

struct Sweep<'a> {
    coords: &'a [&'a [usize]],
    n: usize,
    m: usize,
    d: usize,
    shifts: Vec<usize>,
    best: usize,
    ties: Vec<Vec<usize>>,
}

impl Sweep<'_> {
    fn rec(&mut self, keep: &[u32]) {
        if keep.len() < self.best {
            return;
        }
        let dim = self.shifts.len();
        if dim == self.d {
            if keep.len() > self.best {
                self.best = keep.len();
                self.ties.clear();
            }
            self.ties.push(self.shifts.clone());
            return;
        }
        let mut next = Vec::with_capacity(keep.len());
        for s in 0..self.n {
            next.clear();
            next.extend(keep.iter().copied().filter(|&q| (self.coords[q as usize][dim] - 1 + s) % self.n < self.m));
            self.shifts.push(s);
            self.rec(&next);
            self.shifts.pop();
        }
    }
}

/// One shift vector where the crop size differs from
/// [`subcube_formula`](super::subcube_formula).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaMismatch {
    pub shifts: Vec<usize>,
    /// Queens in the removed corner cube.
    pub p: usize,
    pub crop: usize,
    pub formula: i64,
}

/// Crop sizes of a full solution against the closed form, over every shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub checked: usize,
    /// Largest crop over all shifts.
    pub best_crop: usize,
    /// Largest formula value over all shifts.
    pub best_formula: i64,
    pub mismatches: Vec<FormulaMismatch>,
}

impl FormulaCheck {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every crop of the full solution `source` (removing `k` layers)
/// with [`subcube_formula`](super::subcube_formula), where `p` counts the
/// queens whose shifted coordinates all fall in the removed corner.
pub fn formula_check(source: &Placement, k: usize) -> Result<FormulaCheck> {
    let board = source.board();
    let (n, d) = (board.n(), board.d());
    if k >= n {
        return Err(Error::OutOfRange(format!("cannot remove {k} layers from a board of size {n}")));
    }
    if source.len() != board.full_size() {
        return Err(Error::InvalidArgument("formula check needs a full solution".into()));
    }
    subcube_formula(n, d, k, 0)?;
    let m = n - k;
    let total = BoardSpec::new(n, d)?.num_squares();
    let mut check = FormulaCheck { n, d, k, checked: 0, best_crop: 0, best_formula: i64::MIN, mismatches: Vec::new() };
    let shift_board = BoardSpec::new(n, d)?;
    for i in 0..total {
        let shifts: Vec<usize> = shift_board.coords_of(i).iter().map(|c| c - 1).collect();
        let (mut inside, mut corner) = (0, 0);
        for q in source.queens() {
            let y: Vec<usize> = q.coords().iter().zip(&shifts).map(|(&x, &s)| (x - 1 + s) % n).collect();
            if y.iter().all(|&v| v < m) {
                inside += 1;
            } else if y.iter().all(|&v| v >= m) {
                corner += 1;
            }
        }
        let f = subcube_formula(n, d, k, corner)?;
        check.checked += 1;
        check.best_crop = check.best_crop.max(inside);
        check.best_formula = check.best_formula.max(f);
        if f != inside as i64 {
            check.mismatches.push(FormulaMismatch { shifts, p: corner, crop: inside, formula: f });
        }
    }
    Ok(check)
}
