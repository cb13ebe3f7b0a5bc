use std::collections::HashMap;
use std::fmt::Write as _;

use super::{check_placement, variable_name, Family, IpModel, ModelMode, Objective, Sense};
use crate::error::{Error, Result};
use crate::geometry::{BoardSpec, Placement, Square};

const TERMS_PER_LINE: usize = 8;

/// LP-format text: a header comment with the board and mode, the objective,
/// one named row per constraint, and every variable under `Binaries`.
pub fn export_lp(model: &IpModel) -> String {
    let mut s = String::new();
    let b = model.board;
    let _ = writeln!(s, "\\ queens model n={} d={} mode={}", b.n(), b.d(), model.mode);
    let all: Vec<usize> = (0..model.variables.len()).collect();
    match model.objective {
        Objective::Maximize => {
            s.push_str("Maximize\n");
            write_row(&mut s, model, "obj", &all);
            s.push('\n');
        }
        Objective::Minimize => {
            s.push_str("Minimize\n");
            write_row(&mut s, model, "obj", &all);
            s.push('\n');
        }
        Objective::None => s.push_str("Minimize\n obj:\n"),
    }
    s.push_str("Subject To\n");
    for c in &model.constraints {
        write_row(&mut s, model, &c.name, &c.terms);
        let _ = writeln!(s, " {} {}", c.sense.symbol(), c.rhs);
    }
    s.push_str("Binaries\n");
    for chunk in model.variables.chunks(TERMS_PER_LINE) {
        s.push(' ');
        s.push_str(&chunk.iter().map(|v| v.name.as_str()).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s.push_str("End\n");
    s
}

fn write_row(s: &mut String, model: &IpModel, name: &str, terms: &[usize]) {
    let _ = write!(s, " {name}:");
    for (i, chunk) in terms.chunks(TERMS_PER_LINE).enumerate() {
        if i > 0 {
            s.push_str("\n  ");
        }
        for (j, &t) in chunk.iter().enumerate() {
            if i > 0 || j > 0 {
                s.push_str(" +");
            }
            s.push(' ');
            s.push_str(&model.variables[t].name);
        }
    }
}

/// MIP-start text: every variable with value 1 for a queen and 0 otherwise,
/// in variable order.
pub fn export_warmstart(p: &Placement) -> Result<String> {
    let board = p.board();
    check_placement(board, p)?;
    let mut s = String::from("# MIP start\n");
    let mut on = p.queens().iter().peekable();
    for sq in board.squares() {
        let hit = on.peek().is_some_and(|q| **q == sq);
        if hit {
            on.next();
        }
        let _ = writeln!(s, "{} {}", variable_name(&sq), hit as u8);
    }
    Ok(s)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Preamble,
    Objective,
    Constraints,
    Binaries,
    End,
}

/// Reads text written by [`export_lp`] back into a model.
pub fn parse_lp(text: &str) -> Result<IpModel> {
    let mut header: Option<(usize, usize, ModelMode)> = None;
    let mut section = Section::Preamble;
    let mut objective = Objective::None;
    let mut obj_tokens: Vec<(usize, String)> = Vec::new();
    let mut row_tokens: Vec<(usize, String)> = Vec::new();
    let mut binaries: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('\\') {
            if header.is_none() {
                header = parse_header(comment.trim(), line)?;
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let keyword = trimmed.to_ascii_lowercase();
        let next = match keyword.as_str() {
            "maximize" | "maximum" | "max" => {
                objective = Objective::Maximize;
                Some(Section::Objective)
            }
            "minimize" | "minimum" | "min" => {
                objective = Objective::Minimize;
                Some(Section::Objective)
            }
            "subject to" | "st" | "s.t." => Some(Section::Constraints),
            "binaries" | "binary" | "bin" => Some(Section::Binaries),
            "end" => Some(Section::End),
            _ => None,
        };
        if let Some(next) = next {
            section = next;
            continue;
        }
        let tokens = trimmed.split_whitespace().map(|t| (line, t.to_string()));
        match section {
            Section::Objective => obj_tokens.extend(tokens),
            Section::Constraints => row_tokens.extend(tokens),
            Section::Binaries => binaries.extend(tokens),
            Section::Preamble | Section::End => {
                return Err(Error::Parse { line, msg: format!("unexpected text {trimmed:?}") });
            }
        }
    }

    let names: Vec<(usize, Vec<usize>)> = binaries
        .iter()
        .map(|(line, name)| parse_variable(name).map(|c| (*line, c)).ok_or_else(|| bad(*line, format!("bad variable name {name:?}"))))
        .collect::<Result<_>>()?;
    let (n, d, mode) = match header {
        Some(h) => h,
        None => {
            let d = names.first().map_or(1, |(_, c)| c.len());
            let n = names.iter().flat_map(|(_, c)| c.iter().copied()).max().unwrap_or(1);
            (n, d, ModelMode::Max)
        }
    };
    let board = BoardSpec::new(n, d)?;
    let mut model = IpModel::empty(board, mode, Objective::None);
    let index: HashMap<String, usize> = model.variables.iter().enumerate().map(|(i, v)| (v.name.clone(), i)).collect();
    if names.len() != model.variables.len() {
        return Err(bad(0, format!("{} binaries declared, the board has {} squares", names.len(), model.variables.len())));
    }
    for (line, name) in &binaries {
        if !index.contains_key(name) {
            return Err(bad(*line, format!("variable {name} is not on board {board}")));
        }
    }

    let obj_terms: Vec<&(usize, String)> = obj_tokens.iter().filter(|(_, t)| t != "obj:" && t != "+").collect();
    model.objective = if obj_terms.is_empty() { Objective::None } else { objective };

    let mut toks = row_tokens.iter().peekable();
    while let Some((line, tok)) = toks.next() {
        let name = tok.strip_suffix(':').ok_or_else(|| bad(*line, format!("expected a row name, found {tok:?}")))?;
        let (family, qualifier) = parse_row_name(name).ok_or_else(|| bad(*line, format!("unknown row name {name:?}")))?;
        let mut terms = Vec::new();
        let sense = loop {
            let (line, tok) = toks.next().ok_or_else(|| bad(*line, format!("row {name} has no sense")))?;
            match tok.as_str() {
                "+" => {}
                "<=" | "=<" => break Sense::Le,
                ">=" | "=>" => break Sense::Ge,
                "=" => break Sense::Eq,
                v => terms.push(*index.get(v).ok_or_else(|| bad(*line, format!("unknown variable {v:?} in row {name}")))?),
            }
        };
        let (line, rhs) = toks.next().ok_or_else(|| bad(*line, format!("row {name} has no right-hand side")))?;
        let rhs = rhs.parse().map_err(|_| bad(*line, format!("bad right-hand side {rhs:?}")))?;
        model.push(family, qualifier, terms, sense, rhs);
        if !model.constraints.iter().any(|c| c.name == name) {
            return Err(bad(*line, format!("row {name} is out of order")));
        }
    }
    Ok(model)
}

fn bad(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

fn parse_header(comment: &str, line: usize) -> Result<Option<(usize, usize, ModelMode)>> {
    let Some(rest) = comment.strip_prefix("queens model") else { return Ok(None) };
    let (mut n, mut d, mut mode) = (None, None, None);
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("n", v)) => n = v.parse().ok(),
            Some(("d", v)) => d = v.parse().ok(),
            Some(("mode", v)) => mode = Some(v.parse()?),
            _ => return Err(bad(line, format!("unknown header field {field:?}"))),
        }
    }
    match (n, d, mode) {
        (Some(n), Some(d), Some(m)) => Ok(Some((n, d, m))),
        _ => Err(bad(line, "incomplete model header".into())),
    }
}

fn parse_variable(name: &str) -> Option<Vec<usize>> {
    let rest = name.strip_prefix("x_")?;
    rest.split('_').map(|c| c.parse().ok()).collect()
}

fn parse_row_name(name: &str) -> Option<(Family, Option<String>)> {
    let (prefix, ordinal) = name.rsplit_once('_')?;
    ordinal.parse::<usize>().ok()?;
    match prefix.split_once('_') {
        Some((tag, q)) => Some((Family::from_tag(tag)?, Some(q.to_string()))),
        None => Some((Family::from_tag(prefix)?, None)),
    }
}

/// The squares set to 1 in MIP-start text.
pub fn parse_warmstart(board: BoardSpec, text: &str) -> Result<Placement> {
    let mut queens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut parts = t.split_whitespace();
        let (Some(name), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(i + 1, format!("expected `name value`, found {t:?}")));
        };
        let coords = parse_variable(name).ok_or_else(|| bad(i + 1, format!("bad variable name {name:?}")))?;
        match v {
            "1" => queens.push(Square::new(coords)),
            "0" => {}
            _ => return Err(bad(i + 1, format!("value {v:?} is not binary"))),
        }
    }
    Placement::new(board, queens)
}
