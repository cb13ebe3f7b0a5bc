//! Command-line front end for the `hyperqueens` library.
//!
//! Results are written as JSON (or CSV / LP text where requested) to stdout or
//! `--out`; a one-line summary goes to stderr. Exit codes: 0 on success, 2 when
//! a decision or refutation is proven infeasible, 1 on errors.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use hyperqueens::analysis::{
    density_export, density_map, find_superimposable, regularity_check, tables_report, TableScope, TablesOptions,
};
use hyperqueens::bounds::{bounds_report, records_to_csv, KnownTable, ReportOptions};
use hyperqueens::construct::{enumerate_regular, hoffman_2d, regular_solution, valid_coefficients, RegularSpec};
use hyperqueens::geometry::verify_certificate;
use hyperqueens::ipmodel::{
    add_cube_cliques, add_layer_inequalities, add_odd_cycle_inequalities, add_star_cliques,
    add_subsolution_inequalities, build_base, build_domination, chordless_odd_cycles, decide, export_lp,
    export_warmstart, Family, IpStatus, ModelMode,
};
use hyperqueens::solver::{
    complete, completion_threshold, count_solutions, enumerate_solutions, max_partial, min_domination,
};
use hyperqueens::{BoardSpec, Placement, SearchOptions, Square, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hyperqueens::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },

    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "hyperqueens", version, about = "Queens on d-dimensional boards: search, constructions, bounds and IP models")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// Worker threads (0 = available parallelism)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Wall-clock limit in seconds
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,

    /// Search node limit
    #[arg(long, global = true)]
    pub node_limit: Option<u64>,

    /// JSON table of known |Qmax(n,d)| values (defaults to the bundled table)
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,

    /// JSON file with default values for the global options
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    pub emit: Option<Emit>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Csv,
    Lp,
    Diff,
}

/// Defaults read from `--config`; command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub threads: Option<usize>,
    pub time_limit: Option<f64>,
    pub node_limit: Option<u64>,
    pub table: Option<PathBuf>,
    pub symmetry: Option<bool>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BoardArgs {
    /// Squares per side
    #[arg(short, long)]
    pub n: usize,

    /// Dimension
    #[arg(short, long, default_value_t = 2)]
    pub d: usize,
}

impl BoardArgs {
    fn board(&self) -> CliResult<BoardSpec> {
        Ok(BoardSpec::new(self.n, self.d)?)
    }
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct SearchArgs {
    /// Split the search by symmetry orbits of the first queen
    #[arg(long)]
    pub symmetry: bool,

    /// Use the modular (toroidal) attack relation
    #[arg(long)]
    pub modular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Hoffman,
    Regular,
    AllRegular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Cut {
    Cube,
    Star,
    Layer,
    Subsol,
    OddCycle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a placement from a closed-form construction
    Construct {
        #[arg(long, value_enum, default_value = "hoffman")]
        kind: ConstructKind,
        #[command(flatten)]
        board: BoardArgs,
        /// Coefficients of a regular solution (defaults to the first admissible class)
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        shift: usize,
    },
    /// Check that no two queens of a placement attack each other
    Verify {
        /// Placement JSON file (`-` for stdin)
        file: PathBuf,
        #[arg(long)]
        modular: bool,
    },
    /// Maximum partial solution, or a decision for `--decide K`
    Solve {
        #[command(flatten)]
        board: BoardArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        decide: Option<usize>,
    },
    /// Count placements of exactly k queens
    Count {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List placements of exactly k queens in lexicographic order
    Enumerate {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        modular: bool,
        /// Stop after this many placements
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Extend a partial placement to k queens
    Complete {
        /// Placement JSON file (`-` for stdin)
        #[arg(long)]
        partial: PathBuf,
        /// Target size (defaults to n^(d-1))
        #[arg(short)]
        k: Option<usize>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Completion threshold qc(n,d)
    Qc {
        #[command(flatten)]
        board: BoardArgs,
    },
    /// Minimum dominating queen set
    Dominate {
        #[command(flatten)]
        board: BoardArgs,
    },
    /// Lower and upper bounds on |Qmax(n,d)| over a range of n
    Bounds {
        #[arg(short, long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: Option<usize>,
    },
    /// Export an integer programming model in LP format
    Model {
        #[command(flatten)]
        board: BoardArgs,
        /// max, min, fixed:K or refute:K
        #[arg(long, default_value = "max")]
        mode: String,
        /// Build the domination model instead of the placement model
        #[arg(long)]
        domination: bool,
        #[arg(long, value_enum, value_delimiter = ',')]
        cuts: Vec<Cut>,
        /// Subsolution sizes m for `subsol` cuts
        #[arg(long, value_delimiter = ',')]
        subsol_m: Vec<usize>,
        /// Largest number of odd cycles for `odd-cycle` cuts
        #[arg(long, default_value_t = 1000)]
        cycles: usize,
        /// Placement JSON used as the MIP start
        #[arg(long)]
        warmstart: Option<PathBuf>,
        /// Write the MIP start here
        #[arg(long)]
        mst: Option<PathBuf>,
        /// Decide the model with the built-in 0/1 solver
        #[arg(long)]
        check: bool,
    },
    /// Per-square solution counts
    Density {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(short)]
        k: usize,
        /// Only count solutions with a queen on this square, e.g. 1,1,1
        #[arg(long, value_delimiter = ',')]
        fix: Vec<usize>,
    },
    /// Whether a placement is generated by fixed movements mod n
    Regularity {
        /// Placement JSON file (`-` for stdin)
        file: PathBuf,
    },
    /// Search for pairwise-disjoint (n,2) solutions (an n-colouring for count = n)
    Color {
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Regenerate the known-value tables and compare them with a snapshot
    Tables {
        /// Rows as D:LO-HI, e.g. 3:1-7 (defaults to d = 2, 3, 4)
        #[arg(long = "row")]
        rows: Vec<String>,
        /// Snapshot JSON to compare with (defaults to the bundled table)
        #[arg(long)]
        snapshot: Option<PathBuf>,
        #[arg(long, default_value_t = 216)]
        max_search_squares: usize,
    },
}

/// A finished command: the main output, a summary line and the exit code.
struct Outcome {
    body: String,
    summary: String,
    code: i32,
}

impl Outcome {
    fn json(value: &impl Serialize, summary: String) -> Self {
        Outcome { body: to_json(value), summary, code: EXIT_OK }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("results serialize");
    s.push('\n');
    s
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            } else {
                let _ = write!(stderr, "{text}");
                EXIT_ERROR
            };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &out.body).map_err(|source| CliError::Io { path: path.clone(), source }),
                None => stdout.write_all(out.body.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_ERROR;
            }
            let _ = writeln!(stderr, "{}", out.summary);
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

struct Context {
    threads: usize,
    time_limit: Option<f64>,
    node_limit: Option<u64>,
    table: KnownTable,
    symmetry: bool,
}

impl Context {
    fn load(g: &GlobalArgs) -> CliResult<Self> {
        let config: CliConfig = match &g.config {
            Some(path) => serde_json::from_str(&read_text(path)?).map_err(|source| CliError::Json { path: path.clone(), source })?,
            None => CliConfig::default(),
        };
        let table = match g.table.as_ref().or(config.table.as_ref()) {
            Some(path) => KnownTable::from_json(&read_text(path)?)?,
            None => KnownTable::vendored(),
        };
        Ok(Context {
            threads: g.threads.or(config.threads).unwrap_or(0),
            time_limit: g.time_limit.or(config.time_limit),
            node_limit: g.node_limit.or(config.node_limit),
            table,
            symmetry: config.symmetry.unwrap_or(false),
        })
    }

    fn search(&self, s: SearchArgs) -> SearchOptions {
        SearchOptions {
            time_limit: self.time_limit,
            node_limit: self.node_limit,
            threads: self.threads,
            symmetry_reduction: s.symmetry || self.symmetry,
            modular: s.modular,
            ..SearchOptions::default()
        }
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn read_placement(path: &Path) -> CliResult<Placement> {
    serde_json::from_str(&read_text(path)?).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

fn emit_or(g: &GlobalArgs, default: Emit, allowed: &[Emit]) -> CliResult<Emit> {
    let e = g.emit.unwrap_or(default);
    if allowed.contains(&e) {
        Ok(e)
    } else {
        Err(CliError::Usage(format!("--emit {e:?} is not available for this command").to_lowercase()))
    }
}

fn status_code(status: Status) -> i32 {
    if status == Status::Infeasible {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    }
}

fn execute(cli: &Cli) -> CliResult<Outcome> {
    let g = &cli.global;
    let ctx = Context::load(g)?;
    let json_only = |g: &GlobalArgs| emit_or(g, Emit::Json, &[Emit::Json]);
    match &cli.command {
        Command::Construct { kind, board, coeffs, shift } => {
            json_only(g)?;
            match kind {
                ConstructKind::Hoffman => {
                    if board.d != 2 {
                        return Err(CliError::Usage("hoffman constructs (n,2) solutions; pass -d 2".into()));
                    }
                    let p = hoffman_2d(board.n)?;
                    Ok(Outcome::json(&p, format!("hoffman ({},2): {} queens", board.n, p.len())))
                }
                ConstructKind::Regular => {
                    let coeffs = if coeffs.is_empty() {
                        let classes = valid_coefficients(board.n, board.d)?;
                        classes.all.first().cloned().ok_or_else(|| {
                            hyperqueens::Error::NoConstruction(format!("no admissible coefficients for ({},{})", board.n, board.d))
                        })?
                    } else {
                        coeffs.clone()
                    };
                    let p = regular_solution(&RegularSpec::new(board.n, board.d, coeffs.clone(), *shift)?)?;
                    Ok(Outcome::json(&p, format!("regular ({},{}) coeffs {coeffs:?}: {} queens", board.n, board.d, p.len())))
                }
                ConstructKind::AllRegular => {
                    let all = enumerate_regular(board.n, board.d)?;
                    let v = json!({ "count": all.len(), "solutions": all });
                    Ok(Outcome::json(&v, format!("{} regular solutions on ({},{})", all.len(), board.n, board.d)))
                }
            }
        }
        Command::Verify { file, modular } => {
            json_only(g)?;
            let p = read_placement(file)?;
            let verdict = verify_certificate(&p, *modular)?;
            let conflicts: Vec<[&Square; 2]> = verdict.conflicts().iter().map(|(a, b)| [a, b]).collect();
            let v = json!({
                "valid": verdict.is_valid(),
                "board": p.board(),
                "queens": p.len(),
                "conflicts": conflicts,
            });
            let summary = format!("{} queens on {}: {} conflicting pairs", p.len(), p.board(), conflicts.len());
            let code = if verdict.is_valid() { EXIT_OK } else { EXIT_ERROR };
            Ok(Outcome::json(&v, summary).with_code(code))
        }
        Command::Solve { board, search, decide } => {
            json_only(g)?;
            let b = board.board()?;
            let opts = ctx.search(*search);
            match decide {
                Some(k) => {
                    let r = complete(b, &Placement::empty(b), *k, &opts)?;
                    let summary = format!("decide {k} on {b}: {:?} ({} nodes)", r.status, r.nodes);
                    Ok(Outcome::json(&r, summary).with_code(status_code(r.status)))
                }
                None => {
                    let r = max_partial(b, &opts)?;
                    Ok(Outcome::json(&r, format!("|Qmax{b}| {} {:?} ({} nodes)", r.best_size, r.status, r.nodes)))
                }
            }
        }
        Command::Count { board, k, search } => {
            json_only(g)?;
            let b = board.board()?;
            let r = count_solutions(b, *k, &ctx.search(*search))?;
            let count = r.count.clone().unwrap_or_default();
            Ok(Outcome::json(&r, format!("{count} placements of {k} queens on {b} ({:?})", r.status)))
        }
        Command::Enumerate { board, k, modular, limit } => {
            json_only(g)?;
            let b = board.board()?;
            let opts = ctx.search(SearchArgs { symmetry: false, modular: *modular });
            let mut solutions = Vec::new();
            let r = enumerate_solutions(b, *k, &opts, |p| {
                solutions.push(p);
                limit.is_none_or(|l| solutions.len() < l)
            })?;
            let truncated = limit.is_some_and(|l| solutions.len() >= l);
            let status = if truncated { Status::Limit } else { r.status };
            let v = json!({ "status": status, "count": solutions.len(), "solutions": solutions });
            Ok(Outcome::json(&v, format!("{} placements of {k} queens on {b} ({status:?})", solutions.len())))
        }
        Command::Complete { partial, k, search } => {
            json_only(g)?;
            let p = read_placement(partial)?;
            let b = p.board();
            let k = k.unwrap_or_else(|| b.full_size());
            let r = complete(b, &p, k, &ctx.search(*search))?;
            let summary = format!("complete {} queens to {k} on {b}: {:?}", p.len(), r.status);
            Ok(Outcome::json(&r, summary).with_code(status_code(r.status)))
        }
        Command::Qc { board } => {
            json_only(g)?;
            let b = board.board()?;
            let r = completion_threshold(b, &ctx.search(SearchArgs::default()))?;
            Ok(Outcome::json(&r, format!("qc{b} = {} ({:?}, |Qmax| = {})", r.qc, r.status, r.qmax)))
        }
        Command::Dominate { board } => {
            json_only(g)?;
            let b = board.board()?;
            let r = min_domination(b, &ctx.search(SearchArgs::default()))?;
            Ok(Outcome::json(&r, format!("domination number of {b}: {} ({:?})", r.best_size, r.status)))
        }
        Command::Bounds { d, from, to } => {
            let emit = emit_or(g, Emit::Json, &[Emit::Json, Emit::Csv])?;
            let to = to.unwrap_or(*from);
            if to < *from || *from == 0 {
                return Err(CliError::Usage(format!("empty range {from}..={to}")));
            }
            let recs = bounds_report(*from..=to, *d, &ctx.table, &ReportOptions::default())?;
            let exact = recs.iter().filter(|r| r.is_exact()).count();
            let summary = format!("bounds for d={d}, n={from}..={to}: {exact} of {} exact", recs.len());
            let body = match emit {
                Emit::Csv => records_to_csv(&recs),
                _ => to_json(&recs),
            };
            Ok(Outcome { body, summary, code: EXIT_OK })
        }
        Command::Model { board, mode, domination, cuts, subsol_m, cycles, warmstart, mst, check } => {
            let emit = emit_or(g, Emit::Lp, &[Emit::Lp, Emit::Json])?;
            model(&ctx, *board, mode, *domination, cuts, subsol_m, *cycles, warmstart.as_deref(), mst.as_deref(), *check, emit)
        }
        Command::Density { board, k, fix } => {
            let emit = emit_or(g, Emit::Json, &[Emit::Json, Emit::Csv])?;
            let b = board.board()?;
            let fixed = (!fix.is_empty()).then(|| Square::new(fix.clone()));
            let m = density_map(b, *k, fixed.as_ref(), &ctx.search(SearchArgs::default()))?;
            let summary = format!("density of {} solutions of {k} queens on {b} ({:?})", m.total_solutions, m.status);
            let body = match emit {
                Emit::Csv => density_export(&m),
                _ => to_json(&m),
            };
            Ok(Outcome { body, summary, code: EXIT_OK })
        }
        Command::Regularity { file } => {
            json_only(g)?;
            let p = read_placement(file)?;
            let r = regularity_check(&p)?;
            let summary = format!("{} queens on {}: {}", p.len(), p.board(), if r.is_regular() { "regular" } else { "not regular" });
            Ok(Outcome::json(&r, summary))
        }
        Command::Color { n, count } => {
            json_only(g)?;
            let count = count.unwrap_or(*n);
            let r = find_superimposable(*n, count, &ctx.search(SearchArgs::default()))?;
            let summary = format!("{count} disjoint solutions on ({n},2): {:?} from {} solutions", r.status, r.pool_size);
            Ok(Outcome::json(&r, summary))
        }
        Command::Tables { rows, snapshot, max_search_squares } => {
            let emit = emit_or(g, Emit::Json, &[Emit::Json, Emit::Csv, Emit::Diff])?;
            let scope = if rows.is_empty() { TableScope::standard() } else { rows.iter().map(|r| parse_row(r)).collect::<CliResult<_>>()? };
            let snap = match snapshot {
                Some(path) => KnownTable::from_json(&read_text(path)?)?,
                None => KnownTable::vendored(),
            };
            let defaults = TablesOptions::default();
            let search = SearchOptions { time_limit: ctx.time_limit.or(defaults.search.time_limit), ..ctx.search(SearchArgs::default()) };
            let opts = TablesOptions { search, max_search_squares: *max_search_squares, ..defaults };
            let r = tables_report(&scope, &snap, &opts)?;
            let bad = r.diff.iter().filter(|x| !x.consistent).count();
            let summary = format!("{} cells, {bad} inconsistent with the snapshot", r.cells.len());
            let body = match emit {
                Emit::Csv => r.to_csv(),
                Emit::Diff => r.diff_text(),
                _ => to_json(&r),
            };
            Ok(Outcome { body, summary, code: EXIT_OK })
        }
    }
}

fn parse_row(s: &str) -> CliResult<TableScope> {
    let bad = || CliError::Usage(format!("bad row {s:?} (expected D:LO-HI)"));
    let (d, range) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = range.split_once('-').unwrap_or((range, range));
    let num = |v: &str| v.trim().parse::<usize>().map_err(|_| bad());
    Ok(TableScope::new(num(d)?, num(lo)?..=num(hi)?))
}

#[allow(clippy::too_many_arguments)]
fn model(
    ctx: &Context,
    board: BoardArgs,
    mode: &str,
    domination: bool,
    cuts: &[Cut],
    subsol_m: &[usize],
    cycles: usize,
    warmstart: Option<&Path>,
    mst: Option<&Path>,
    check: bool,
    emit: Emit,
) -> CliResult<Outcome> {
    let b = board.board()?;
    let mode: ModelMode = mode.parse()?;
    let mut m = if domination { build_domination(b, mode)? } else { build_base(b, mode)? };
    for cut in cuts {
        if domination {
            return Err(CliError::Usage("cuts apply to the placement model only".into()));
        }
        match cut {
            Cut::Cube => add_cube_cliques(&mut m),
            Cut::Star => add_star_cliques(&mut m),
            Cut::Layer => add_layer_inequalities(&mut m, &ctx.table)?,
            Cut::Subsol => {
                if subsol_m.is_empty() {
                    return Err(CliError::Usage("subsol cuts need --subsol-m".into()));
                }
                add_subsolution_inequalities(&mut m, &ctx.table, subsol_m)?
            }
            Cut::OddCycle => add_odd_cycle_inequalities(&mut m, &chordless_odd_cycles(b, cycles))?,
        }
    }
    if let Some(path) = warmstart {
        m.set_warmstart(read_placement(path)?)?;
    }
    if let Some(path) = mst {
        let p = m.warmstart.clone().ok_or_else(|| CliError::Usage("--mst needs --warmstart".into()))?;
        std::fs::write(path, export_warmstart(&p)?).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    }
    let rows: serde_json::Map<String, Value> =
        Family::ALL.iter().map(|f| (f.tag().to_string(), json!(m.num_constraints(*f)))).collect();
    let mut info = json!({
        "board": b,
        "mode": mode.to_string(),
        "variables": m.variables.len(),
        "constraints": m.constraints.len(),
        "rows": rows,
    });
    let mut code = EXIT_OK;
    if check {
        let out = decide(&m, ctx.node_limit, ctx.time_limit)?;
        if out.status == IpStatus::Infeasible {
            code = EXIT_INFEASIBLE;
        }
        info["check"] = json!(out);
    }
    let summary = format!(
        "model {b} {mode}: {} variables, {} constraints{}",
        m.variables.len(),
        m.constraints.len(),
        info.get("check").map_or(String::new(), |c| format!(", check {}", c["status"]))
    );
    let body = match emit {
        Emit::Json => to_json(&info),
        _ => export_lp(&m),
    };
    Ok(Outcome { body, summary, code })
}
