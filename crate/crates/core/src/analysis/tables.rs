use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::{bounds_report, EntryKind, KnownEntry, KnownTable, ReportOptions};
use crate::error::{Error, Result};
use crate::geometry::BoardSpec;
use crate::solver::{max_partial, SearchOptions, Status};

/// One row of a known-values table: dimension `d` over the given `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableScope {
    pub d: usize,
    pub ns: Vec<usize>,
}

impl TableScope {
    pub fn new(d: usize, ns: impl IntoIterator<Item = usize>) -> Self {
        TableScope { d, ns: ns.into_iter().collect() }
    }

    /// Rows for `d = 2..=4` over the commonly tabulated sizes.
    pub fn standard() -> Vec<TableScope> {
        vec![TableScope::new(2, 1..=13), TableScope::new(3, 1..=7), TableScope::new(4, 1..=4)]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TablesOptions {
    /// Limits for each exact search; a search is attempted only on boards with
    /// at most `max_search_squares` squares whose bounds do not meet.
    pub search: SearchOptions,
    pub max_search_squares: usize,
    pub bounds: ReportOptions,
}

impl Default for TablesOptions {
    fn default() -> Self {
        TablesOptions {
            search: SearchOptions { time_limit: Some(300.0), ..SearchOptions::default() },
            max_search_squares: 216,
            bounds: ReportOptions::default(),
        }
    }
}

/// A regenerated table cell. `kind` is `exact` when the bounds meet and
/// `lower` otherwise, with `value` the lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub n: usize,
    pub d: usize,
    pub value: u64,
    pub kind: EntryKind,
    pub lower: u64,
    pub upper: u64,
    pub lower_method: String,
    pub upper_method: String,
}

/// A regenerated cell next to the snapshot entry for the same board.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDiff {
    pub n: usize,
    pub d: usize,
    pub ours: String,
    pub snapshot: Option<String>,
    /// The two cells are consistent: the snapshot value lies in our bounds
    /// (or is a bound compatible with them).
    pub consistent: bool,
    /// The two cells state the same value with the same kind.
    pub identical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesReport {
    pub cells: Vec<TableCell>,
    pub diff: Vec<CellDiff>,
}

impl TablesReport {
    pub fn cell(&self, n: usize, d: usize) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.n == n && c.d == d)
    }

    /// The values of one row in the order they were computed.
    pub fn row(&self, d: usize) -> Vec<u64> {
        self.cells.iter().filter(|c| c.d == d).map(|c| c.value).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,d,value,kind,lower,upper,lower_method,upper_method,snapshot,consistent\n");
        for (c, x) in self.cells.iter().zip(&self.diff) {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                c.n,
                c.d,
                c.value,
                c.kind,
                c.lower,
                c.upper,
                c.lower_method,
                c.upper_method,
                x.snapshot.as_deref().unwrap_or(""),
                x.consistent
            );
        }
        s
    }

    /// A unified-style diff: `=` for identical cells, `~` for consistent but
    /// different ones, `!` for contradictions and `+` for cells missing from
    /// the snapshot.
    pub fn diff_text(&self) -> String {
        let mut s = String::new();
        for x in &self.diff {
            let mark = match (&x.snapshot, x.identical, x.consistent) {
                (None, _, _) => '+',
                (_, true, _) => '=',
                (_, false, true) => '~',
                (_, false, false) => '!',
            };
            let _ = writeln!(s, "{mark} ({},{}) ours {} snapshot {}", x.n, x.d, x.ours, x.snapshot.as_deref().unwrap_or("-"));
        }
        s
    }
}

fn describe(value: u64, kind: EntryKind) -> String {
    match kind {
        EntryKind::Exact => value.to_string(),
        EntryKind::Lower => format!(">={value}"),
        EntryKind::Upper => format!("<={value}"),
    }
}

/// Regenerates the requested rows from constructions, bounds and exact
/// search only, then compares every cell with `snapshot`.
pub fn tables_report(scope: &[TableScope], snapshot: &KnownTable, opts: &TablesOptions) -> Result<TablesReport> {
    let mut derived = KnownTable::new();
    let mut cells = Vec::new();
    let mut rows: Vec<&TableScope> = scope.iter().collect();
    rows.sort_by_key(|r| r.d);
    for row in rows {
        let mut ns = row.ns.clone();
        ns.sort_unstable();
        ns.dedup();
        for n in ns {
            let cell = cell(n, row.d, &derived, opts)?;
            let source = if cell.kind == EntryKind::Exact { cell.upper_method.clone() } else { cell.lower_method.clone() };
            derived.insert(n, row.d, KnownEntry { value: cell.value, kind: cell.kind, source });
            cells.push(cell);
        }
    }
    let diff = cells
        .iter()
        .map(|c| {
            let theirs = snapshot.get(c.n, c.d);
            let consistent = theirs.is_none_or(|e| match e.kind {
                EntryKind::Exact => c.lower <= e.value && e.value <= c.upper,
                EntryKind::Lower => e.value <= c.upper,
                EntryKind::Upper => c.lower <= e.value,
            });
            CellDiff {
                n: c.n,
                d: c.d,
                ours: describe(c.value, c.kind),
                snapshot: theirs.map(|e| describe(e.value, e.kind)),
                consistent,
                identical: theirs.is_some_and(|e| e.value == c.value && e.kind == c.kind),
            }
        })
        .collect();
    Ok(TablesReport { cells, diff })
}

fn cell(n: usize, d: usize, derived: &KnownTable, opts: &TablesOptions) -> Result<TableCell> {
    let rec = bounds_report([n], d, derived, &opts.bounds)?.remove(0);
    let relabel = |m: String| match m.strip_prefix("table:") {
        Some(_) => derived.get(n, d).map_or(m.clone(), |e| e.source.clone()),
        None => m,
    };
    let (mut lower, mut upper) = (rec.lower, rec.upper);
    let mut lower_method = relabel(rec.lower_method);
    let mut upper_method = relabel(rec.upper_method);
    let board = BoardSpec::new(n, d)?;
    if lower < upper && board.num_squares() <= opts.max_search_squares {
        let r = max_partial(board, &opts.search)?;
        if r.best_size as u64 > lower {
            lower = r.best_size as u64;
            lower_method = "search".into();
        }
        if r.status == Status::Optimal {
            upper = r.best_size as u64;
            upper_method = "search".into();
        }
    }
    if lower > upper {
        return Err(Error::InvalidArgument(format!("inconsistent bounds for ({n},{d})")));
    }
    let kind = if lower == upper { EntryKind::Exact } else { EntryKind::Lower };
    Ok(TableCell { n, d, value: lower, kind, lower, upper, lower_method, upper_method })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let scope = [TableScope::new(2, 1..=13), TableScope::new(3, 1..=5), TableScope::new(4, 1..=3)];
        let r = tables_report(&scope, &KnownTable::vendored(), &TablesOptions::default()).unwrap();
        assert_eq!(r.row(2), vec![1, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13]);
        assert_eq!(r.row(3), vec![1, 1, 4, 7, 13]);
        assert_eq!(r.row(4), vec![1, 1, 6]);
        assert!(r.cells.iter().all(|c| c.kind == EntryKind::Exact));
        assert!(r.diff.iter().all(|x| x.consistent && x.identical));
        assert_eq!(r.cell(4, 3).unwrap().upper_method, "search");
        assert!(r.diff_text().lines().all(|l| l.starts_with('=')));
        assert_eq!(r.to_csv().lines().count(), 1 + 13 + 5 + 3);
    }

    #[test]
    fn contradictions_are_flagged() {
        let mut snap = KnownTable::new();
        snap.insert_exact(4, 3, 8, "wrong");
        let r = tables_report(&[TableScope::new(3, [4])], &snap, &TablesOptions::default()).unwrap();
        assert!(!r.diff[0].consistent);
        assert!(r.diff_text().starts_with("! (4,3)"));
    }
}
