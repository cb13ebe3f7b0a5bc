//! Lower bounds from cropped regular solutions and closed forms, upper
//! bounds from tilings and layers, and bound tables.

mod crop;
mod table;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::construct::{hoffman_2d, regular_solution, valid_coefficients, RegularSpec};
use crate::error::{Error, Result};
use crate::geometry::{BoardSpec, Placement, Square};

pub use crop::{best_crop, crop, formula_check, FormulaCheck, FormulaMismatch};
pub use table::{EntryKind, KnownEntry, KnownTable};

/// Bounds on `|Qmax(n, d)|` with their provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub n: usize,
    pub d: usize,
    pub lower: u64,
    pub upper: u64,
    pub lower_method: String,
    pub upper_method: String,
    /// A placement with exactly `lower` queens, when one is known.
    pub witness: Option<Placement>,
}

impl BoundsRecord {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Predicted size of the crop of a full regular solution on `(n, d)` after
/// removing `k` layers per dimension, where `p` is the number of queens in
/// the removed `k^d` corner cube.
///
/// `d = 2`: `n − 2k + p`; `d = 3`: `n² − 3kn + 3k² − p`;
/// `d = 4`: `n³ − 4kn² + 6k²n + 8k² − 12k³ + p`. The `d = 4` form agrees with
/// inclusion–exclusion (`… − 4k³ + p`) only at `k = 1`.
pub fn subcube_formula(n: usize, d: usize, k: usize, p: usize) -> Result<i64> {
    let (n, k, p) = (n as i64, k as i64, p as i64);
    match d {
        2 => Ok(n - 2 * k + p),
        3 => Ok(n * n - 3 * k * n + 3 * k * k - p),
        4 => Ok(n.pow(3) - 4 * k * n * n + 6 * k * k * n + 8 * k * k - 12 * k.pow(3) + p),
        _ => Err(Error::InvalidArgument(format!("no subcube formula for d = {d}"))),
    }
}

/// `max(1, n² − 10n − 32)`, a lower bound on `|Qmax(n, 3)|`.
pub fn lower_bound_closed_form(n: usize) -> u64 {
    let n = n as i128;
    (n * n - 10 * n - 32).max(1) as u64
}

/// Tiling bound: the least `|Qmax(m, d)|·(n/m)^d` over proper divisors
/// `1 < m < n` with an exact value or upper bound in `table`, or the line
/// bound `n^(d−1)` when there is none. The tiling value is reported even when
/// it exceeds the line bound.
pub fn upper_bound_tiling(n: usize, d: usize, table: &KnownTable) -> u64 {
    tiling(n, d, table).map_or(lines(n, d).0, |t| t.0)
}

/// Layer bound: `min over d′ < d of |Qmax(n, d′)|·n^(d−d′)`.
pub fn upper_bound_layer(n: usize, d: usize, table: &KnownTable) -> u64 {
    layering(n, d, table).0
}

fn lines(n: usize, d: usize) -> (u64, String) {
    (pow(n, d.saturating_sub(1)), "lines".to_string())
}

fn tiling(n: usize, d: usize, table: &KnownTable) -> Option<(u64, String)> {
    (2..n)
        .filter(|m| n.is_multiple_of(*m))
        .filter_map(|m| table.upper(m, d).map(|(q, _)| (q.saturating_mul(pow(n / m, d)), format!("tiling:m={m}"))))
        .min_by_key(|t| t.0)
}

fn layering(n: usize, d: usize, table: &KnownTable) -> (u64, String) {
    let mut best = lines(n, d);
    for dd in 1..d {
        if let Some((q, _)) = table.upper(n, dd) {
            let v = q.saturating_mul(pow(n, d - dd));
            if v < best.0 {
                best = (v, format!("layer:d={dd}"));
            }
        }
    }
    best
}

fn pow(base: usize, exp: usize) -> u64 {
    (base as u64).checked_pow(exp as u32).unwrap_or(u64::MAX)
}

/// Settings for [`bounds_report`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ReportOptions {
    /// Crop sources range over `n + 1 ..= n + crop_reach`.
    pub crop_reach: usize,
    /// Skip crop sources whose shift search exceeds this many queen visits.
    pub max_crop_work: u64,
    /// Largest full solution built from a regular construction.
    pub max_construction: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { crop_reach: 4, max_crop_work: 200_000_000, max_construction: 1 << 20 }
    }
}

/// One record per `n` in `ns` on `d` dimensions, combining table values,
/// constructions, crops of larger regular solutions, the closed form,
/// monotone lifts (from `n − 1` when it precedes `n` in `ns`, and from
/// `d − 1`) and the tiling and layer upper bounds.
pub fn bounds_report(
    ns: impl IntoIterator<Item = usize>,
    d: usize,
    table: &KnownTable,
    opts: &ReportOptions,
) -> Result<Vec<BoundsRecord>> {
    let mut memo = BTreeMap::new();
    let mut out = Vec::new();
    for n in ns {
        out.push(record(n, d, table, opts, &mut memo)?);
    }
    Ok(out)
}

type Candidate = (u64, String, Option<Placement>);

fn record(
    n: usize,
    d: usize,
    table: &KnownTable,
    opts: &ReportOptions,
    memo: &mut BTreeMap<(usize, usize), BoundsRecord>,
) -> Result<BoundsRecord> {
    if let Some(r) = memo.get(&(n, d)) {
        return Ok(r.clone());
    }
    let board = BoardSpec::new(n, d)?;
    let mut cands: Vec<Candidate> = vec![(1, "trivial".into(), Some(Placement::new(board, vec![Square::new(vec![1; d])])?))];
    if let Some(v) = table.lower(n, d) {
        let kind = table.get(n, d).map_or(EntryKind::Exact, |e| e.kind);
        cands.push((v, format!("table:{kind}"), None));
    }
    if let Some(c) = construction(n, d, opts)? {
        cands.push(c);
    }
    if d == 3 {
        cands.push((lower_bound_closed_form(n), "closed_form".into(), None));
    }
    if d >= 3 {
        let sources = crop_sources(n, d, opts)?;
        if !sources.is_empty() {
            let r = best_crop(n, d, &sources)?;
            cands.push((r.lower, r.lower_method, r.witness));
        }
    }
    if let Some(prev) = memo.get(&(n - 1, d)).cloned() {
        let w = prev.witness.map(|w| Placement::new(board, w.queens().to_vec())).transpose()?;
        cands.push((prev.lower, format!("lift:n={}", n - 1), w));
    }
    if d > 1 {
        let prev = record(n, d - 1, table, opts, memo)?;
        let w = prev
            .witness
            .map(|w| {
                let queens = w.queens().iter().map(|q| Square::new([q.coords(), &[1]].concat())).collect();
                Placement::new(board, queens)
            })
            .transpose()?;
        cands.push((prev.lower, format!("lift:d={}", d - 1), w));
    }
    // prefer larger values, then candidates with a witness, then earlier ones
    let (lower, lower_method, witness) = cands
        .into_iter()
        .enumerate()
        .max_by_key(|(i, c)| (c.0, c.2.is_some(), std::cmp::Reverse(*i)))
        .map(|(_, c)| c)
        .expect("trivial candidate");

    let mut upper = layering(n, d, table);
    if let Some(t) = tiling(n, d, table).filter(|t| t.0 < upper.0) {
        upper = t;
    }
    if let Some((v, kind)) = table.upper(n, d) {
        if v <= upper.0 {
            upper = (v, format!("table:{kind}"));
        }
    }
    if lower > upper.0 {
        return Err(Error::InvalidArgument(format!(
            "inconsistent bounds for ({n},{d}): lower {lower} ({lower_method}) exceeds upper {} ({})",
            upper.0, upper.1
        )));
    }
    let r = BoundsRecord { n, d, lower, upper: upper.0, lower_method, upper_method: upper.1, witness };
    memo.insert((n, d), r.clone());
    Ok(r)
}

/// A full solution from Hoffman's construction (`d = 2`) or the first
/// regular class (`d ≥ 3`).
fn construction(n: usize, d: usize, opts: &ReportOptions) -> Result<Option<Candidate>> {
    if d == 2 && n >= 4 {
        return Ok(Some((n as u64, "hoffman".into(), Some(hoffman_2d(n)?))));
    }
    if d < 3 || n < 2 || pow(n, d - 1) > opts.max_construction || pow(n, d - 1) > 1 << 24 {
        return Ok(None);
    }
    let Some(spec) = first_class(n, d)? else { return Ok(None) };
    let p = regular_solution(&spec)?;
    Ok(Some((p.len() as u64, "regular".into(), Some(p))))
}

fn first_class(n: usize, d: usize) -> Result<Option<RegularSpec>> {
    let classes = valid_coefficients(n, d)?;
    classes.classes.first().map(|c| RegularSpec::new(n, d, c[0].clone(), 0)).transpose()
}

/// One regular solution per coefficient class for each source size within
/// reach, skipping sources whose shift search is too large.
fn crop_sources(n: usize, d: usize, opts: &ReportOptions) -> Result<Vec<Placement>> {
    let mut out = Vec::new();
    for ns in n + 1..=n + opts.crop_reach {
        let work = pow(ns, d).saturating_mul(pow(ns, d - 1));
        if work > opts.max_crop_work || pow(ns, d - 1) > opts.max_construction {
            continue;
        }
        let classes = valid_coefficients(ns, d)?;
        for class in &classes.classes {
            out.push(regular_solution(&RegularSpec::new(ns, d, class[0].clone(), 0)?)?);
        }
    }
    Ok(out)
}

/// CSV with one row per record (no witnesses).
pub fn records_to_csv(records: &[BoundsRecord]) -> String {
    let mut s = String::from("n,d,lower,upper,exact,lower_method,upper_method\n");
    for r in records {
        let _ = writeln!(s, "{},{},{},{},{},{},{}", r.n, r.d, r.lower, r.upper, r.is_exact(), r.lower_method, r.upper_method);
    }
    s
}

pub fn records_to_json(records: &[BoundsRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}
