use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

const VENDORED: &str = include_str!("../../data/known_qmax.json");

/// How a table value relates to `|Qmax(n, d)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Exact,
    Lower,
    Upper,
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryKind::Exact => "exact",
            EntryKind::Lower => "lower",
            EntryKind::Upper => "upper",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownEntry {
    pub value: u64,
    pub kind: EntryKind,
    pub source: String,
}

/// Known values of `|Qmax(n, d)|`, keyed by `(d, n)`.
///
/// Besides the stored entries, the table always knows the elementary facts
/// `|Qmax(n, 1)| = |Qmax(1, d)| = |Qmax(2, d)| = 1`, `|Qmax(3, 2)| = 2` and
/// `|Qmax(n, 2)| = n` for `n ≥ 4`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnownTable {
    entries: BTreeMap<(usize, usize), KnownEntry>,
}

impl KnownTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The table shipped with the crate (published maxima up to `d = 8`).
    pub fn vendored() -> Self {
        Self::from_json(VENDORED).expect("vendored table is well-formed")
    }

    /// Parses `{"d": {"n": value | {"value", "kind", "source"}}}`; bare numbers
    /// are exact values.
    pub fn from_json(text: &str) -> Result<Self> {
        let root: Map<String, Value> = serde_json::from_str(text)?;
        let mut table = KnownTable::new();
        for (d, row) in root {
            let d = parse_key(&d)?;
            let row = row.as_object().ok_or_else(|| bad(format!("row for d={d} is not an object")))?;
            for (n, cell) in row {
                let n = parse_key(n)?;
                let entry = match cell {
                    Value::Number(v) => KnownEntry {
                        value: v.as_u64().ok_or_else(|| bad(format!("({n},{d}): not a count")))?,
                        kind: EntryKind::Exact,
                        source: "table".into(),
                    },
                    other => serde_json::from_value(other.clone())?,
                };
                table.insert(n, d, entry);
            }
        }
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let mut root: BTreeMap<usize, BTreeMap<usize, &KnownEntry>> = BTreeMap::new();
        for ((d, n), e) in &self.entries {
            root.entry(*d).or_default().insert(*n, e);
        }
        serde_json::to_string_pretty(&root).expect("table serializes")
    }

    pub fn insert(&mut self, n: usize, d: usize, entry: KnownEntry) {
        self.entries.insert((d, n), entry);
    }

    pub fn insert_exact(&mut self, n: usize, d: usize, value: u64, source: &str) {
        self.insert(n, d, KnownEntry { value, kind: EntryKind::Exact, source: source.into() });
    }

    pub fn get(&self, n: usize, d: usize) -> Option<&KnownEntry> {
        self.entries.get(&(d, n))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &KnownEntry)> {
        self.entries.iter().map(|((d, n), e)| (*n, *d, e))
    }

    /// The exact value, from the stored entries or the elementary facts.
    pub fn exact(&self, n: usize, d: usize) -> Option<u64> {
        match self.get(n, d) {
            Some(e) if e.kind == EntryKind::Exact => Some(e.value),
            _ => elementary(n, d),
        }
    }

    /// An exact value or an upper bound, with its kind.
    pub fn upper(&self, n: usize, d: usize) -> Option<(u64, EntryKind)> {
        if let Some(v) = self.exact(n, d) {
            return Some((v, EntryKind::Exact));
        }
        match self.get(n, d) {
            Some(e) if e.kind == EntryKind::Upper => Some((e.value, EntryKind::Upper)),
            _ => None,
        }
    }

    /// An exact value or a lower bound.
    pub fn lower(&self, n: usize, d: usize) -> Option<u64> {
        self.exact(n, d).or_else(|| match self.get(n, d) {
            Some(e) if e.kind == EntryKind::Lower => Some(e.value),
            _ => None,
        })
    }

    /// Like [`upper`](Self::upper) but an error when nothing is known.
    pub fn require_upper(&self, n: usize, d: usize) -> Result<(u64, EntryKind)> {
        self.upper(n, d).ok_or(Error::MissingTableEntry { n, d })
    }
}

fn elementary(n: usize, d: usize) -> Option<u64> {
    match (n, d) {
        (0, _) | (_, 0) => None,
        (_, 1) | (1, _) | (2, _) => Some(1),
        (3, 2) => Some(2),
        (n, 2) => Some(n as u64),
        _ => None,
    }
}

fn parse_key(s: &str) -> Result<usize> {
    s.parse().map_err(|_| bad(format!("key {s:?} is not a positive integer")))
}

fn bad(msg: String) -> Error {
    Error::Parse { line: 0, msg }
}
