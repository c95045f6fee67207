//! The `graphc` command line.

pub mod checks;
mod export;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::diagrams::{canonicalize, ComplexType, Diagram, SignedDiagram};
use crate::enumeration::{cache_file_name, cache_path, read_verified, DEFAULT_MAX_CELL_SIZE};
use crate::error::GraphError;
use crate::linalg::GraphComplex;
use checks::{degree_range, run_check, CheckKind};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_CHECK: u8 = 4;
pub const EXIT_CACHE: u8 = 5;

pub const CACHE_ENV: &str = "GRAPHC_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "graphc", version, about = "Bases, differentials and cohomology of diagram complexes on a circle")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Basis cache directory; overrides GRAPHC_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest number of diagrams one enumeration cell may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CELL_SIZE, value_parser = positive)]
    pub max_cell_size: usize,
    /// Progress messages on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TypeSel {
    Odd,
    Even,
    Both,
}

impl TypeSel {
    pub fn kinds(self) -> Vec<ComplexType> {
        match self {
            TypeSel::Odd => vec![ComplexType::Odd],
            TypeSel::Even => vec![ComplexType::Even],
            TypeSel::Both => ComplexType::BOTH.to_vec(),
        }
    }
}

/// `N` or `A..B` (inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Span, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad bound {t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if lo < 0 || lo > hi {
            return Err(format!("empty or negative range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

impl Span {
    pub fn iter(self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct Grid {
    #[arg(long = "type", value_enum, default_value_t = TypeSel::Both)]
    pub kind: TypeSel,
    /// Order: `N` or `A..B`.
    #[arg(short = 'k', default_value = "1..3")]
    pub k: Span,
    /// Degree: `N` or `A..B`; defaults to every degree that can be nonzero.
    #[arg(short = 'm')]
    pub m: Option<Span>,
}

impl Grid {
    /// `(type, k, m)` triples in output order.
    pub fn cells(&self) -> Vec<(ComplexType, i64, i64)> {
        let mut out = Vec::new();
        for kind in self.kind.kinds() {
            for k in self.k.iter() {
                let ms: Vec<i64> = match self.m {
                    Some(span) => span.iter().collect(),
                    None => degree_range(k).collect(),
                };
                out.extend(ms.into_iter().map(|m| (kind, k, m)));
            }
        }
        out
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List canonical basis diagrams.
    Basis(Grid),
    /// Dimensions of the chain spaces and of cohomology.
    Table(Grid),
    /// Cohomology dimensions, optionally with representatives.
    Cohomology {
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        representative: bool,
    },
    /// Exhaustive consistency checks.
    Check {
        #[arg(value_enum)]
        which: CheckArg,
        #[arg(long = "type", value_enum, default_value_t = TypeSel::Both)]
        kind: TypeSel,
        #[arg(long, default_value_t = 4)]
        kmax: i64,
    },
    /// Write one diagram as JSON or Graphviz DOT.
    Export {
        #[arg(value_enum)]
        to: ExportFormat,
        #[command(flatten)]
        selector: export::Selector,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Matrix of delta at one grading as sparse triplets.
    Matrix {
        #[arg(long = "type")]
        kind: ComplexType,
        #[arg(short = 'k')]
        k: i64,
        #[arg(short = 'm')]
        m: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Manage the basis cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    D2,
    Adjoint,
    ChordCompare,
    Quadrivalent,
    All,
}

impl CheckArg {
    fn checks(self) -> Vec<CheckKind> {
        match self {
            CheckArg::D2 => vec![CheckKind::D2],
            CheckArg::Adjoint => vec![CheckKind::Adjoint],
            CheckArg::ChordCompare => vec![CheckKind::ChordCompare],
            CheckArg::Quadrivalent => vec![CheckKind::Quadrivalent],
            CheckArg::All => vec![CheckKind::D2, CheckKind::Adjoint, CheckKind::Quadrivalent, CheckKind::ChordCompare],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Enumerate and store bases for a grid.
    Build(Grid),
    /// Verify every cache file's version and checksum.
    Verify,
    /// List cache files with their record counts.
    List,
    /// Delete cache files.
    Clear,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> CliError {
        let code = match e {
            GraphError::CapExceeded { .. } => EXIT_CAP,
            GraphError::CacheChecksum(_) | GraphError::StaleCache { .. } | GraphError::CacheCorrupt { .. } => EXIT_CACHE,
            _ => EXIT_FAILURE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        GraphError::from(e).into()
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses the process arguments, runs the command and prints its output.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let env_cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    match run(&cli, env_cache) {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("graphc: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Runs a parsed command; returns the stdout text and the exit code.
pub fn run(cli: &Cli, env_cache: Option<PathBuf>) -> CliResult<(String, u8)> {
    let g = &cli.global;
    let cache_dir = g.cache_dir.clone().or(env_cache);
    let mut gc = GraphComplex::new().with_max_cell_size(g.max_cell_size);
    if let Some(dir) = &cache_dir {
        gc = gc.with_cache_dir(dir);
    }
    let progress = |msg: String| {
        if g.verbose > 0 {
            eprintln!("{msg}");
        }
    };
    match &cli.command {
        Command::Basis(grid) => Ok((cmd_basis(&gc, grid, g.format)?, 0)),
        Command::Table(grid) => Ok((cmd_table(&gc, grid, g.format, &progress)?, 0)),
        Command::Cohomology { grid, representative } => {
            Ok((cmd_cohomology(&gc, grid, *representative, g.format)?, 0))
        }
        Command::Check { which, kind, kmax } => cmd_check(&gc, *which, *kind, *kmax, g.format, &progress),
        Command::Export { to, selector, output } => {
            let text = export::cmd_export(&gc, selector, *to)?;
            emit_to(output.as_ref(), text)
        }
        Command::Matrix { kind, k, m, output } => {
            let text = cmd_matrix(&gc, *kind, *k, *m, cache_dir.as_deref())?;
            emit_to(output.as_ref(), text)
        }
        Command::Cache { action } => {
            let dir = cache_dir.ok_or_else(|| usage(format!("no cache directory: pass --cache-dir or set {CACHE_ENV}")))?;
            cmd_cache(&gc, action, &dir, g.format)
        }
    }
}

fn emit_to(output: Option<&PathBuf>, text: String) -> CliResult<(String, u8)> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| GraphError::Io {
                path: path.clone(),
                source,
            })?;
            Ok((String::new(), 0))
        }
        None => Ok((text, 0)),
    }
}

fn csv_escape(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn render(format: Format, rows: &[Value], csv_header: &[&str], text: impl FnOnce() -> String) -> CliResult<String> {
    Ok(match format {
        Format::Text => text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Value::Array(rows.to_vec()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = csv_header.join(",");
            s.push('\n');
            for row in rows {
                let cells: Vec<String> = csv_header
                    .iter()
                    .map(|h| match &row[*h] {
                        Value::String(x) => x.clone(),
                        Value::Null => String::new(),
                        v @ (Value::Object(_) | Value::Array(_)) => csv_escape(&v.to_string()),
                        v => v.to_string(),
                    })
                    .collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
    })
}

pub fn cmd_basis(gc: &GraphComplex, grid: &Grid, format: Format) -> CliResult<String> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for (kind, k, m) in grid.cells() {
        let basis = gc.basis(kind, k, m)?;
        let _ = writeln!(text, "# {kind} k={k} m={m}: {} diagrams", basis.len());
        for (i, d) in basis.diagrams().iter().enumerate() {
            let _ = writeln!(text, "{}", d.to_json());
            rows.push(json!({"type": kind, "k": k, "m": m, "index": i, "diagram": d.to_record()}));
        }
    }
    render(format, &rows, &["type", "k", "m", "index", "diagram"], || text)
}

pub fn cmd_table(gc: &GraphComplex, grid: &Grid, format: Format, progress: &dyn Fn(String)) -> CliResult<String> {
    let mut rows = Vec::new();
    let mut text = format!("{:<5} {:>3} {:>3} {:>8} {:>4}\n", "type", "k", "m", "dim", "H");
    for (kind, k, m) in grid.cells() {
        progress(format!("{kind} k={k} m={m}"));
        let dim = gc.dim(kind, k, m)?;
        let h = gc.cohomology_dim(kind, k, m)?;
        let _ = writeln!(text, "{:<5} {:>3} {:>3} {:>8} {:>4}", kind.as_str(), k, m, dim, h);
        rows.push(json!({"type": kind, "k": k, "m": m, "dim": dim, "cohomology": h}));
    }
    render(format, &rows, &["type", "k", "m", "dim", "cohomology"], || text)
}

/// Canonical forms of the two diagrams supporting the `(even, 3, 1)` class:
/// the star on four external vertices, and the chords `{1,3},{1,4},{2,5}`.
pub fn generator_support() -> [Diagram; 2] {
    let kind = ComplexType::Even;
    let star = Diagram::from_pairs(kind, 4, 1, &[(1, 5), (4, 5), (3, 5), (2, 5)]).expect("valid star");
    let chords = Diagram::from_pairs(kind, 5, 0, &[(1, 3), (1, 4), (2, 5)]).expect("valid chords");
    [star, chords].map(|d| match canonicalize(&d).expect("valid diagram") {
        SignedDiagram::Term(_, c) => c,
        SignedDiagram::Zero => panic!("{d} vanishes"),
    })
}

pub fn cmd_cohomology(gc: &GraphComplex, grid: &Grid, representative: bool, format: Format) -> CliResult<String> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for (kind, k, m) in grid.cells() {
        let report = gc.class_report(kind, k, m, representative)?;
        let _ = writeln!(text, "H^{{{k},{m}}} {kind}: dim {}", report.dim);
        let mut row = json!({"type": kind, "k": k, "m": m, "dim": report.dim});
        if let Some(rep) = &report.representative {
            text.push_str("  representative:\n");
            for (d, c) in rep.terms() {
                let _ = writeln!(text, "    {c} {}", d.to_json());
            }
            row["representative"] = serde_json::to_value(rep.to_record())?;
            if (kind, k, m) == (ComplexType::Even, 3, 1) {
                let support = generator_support();
                match gc.express_in_support(rep, &support)? {
                    Some(v) => {
                        let [a, b] = [v.coefficient(&support[0]), v.coefficient(&support[1])];
                        text.push_str("  supported on the star and chord diagrams:\n");
                        for (d, c) in v.terms() {
                            let _ = writeln!(text, "    {c} {}", d.to_json());
                        }
                        let ratio = (!a.is_zero()).then(|| (&b / &a).to_string());
                        if let Some(r) = &ratio {
                            let _ = writeln!(text, "  ratio chords/star: {r}");
                        }
                        row["support_representative"] = serde_json::to_value(v.to_record())?;
                        row["ratio"] = json!(ratio);
                    }
                    None => {
                        text.push_str("  no representative supported on the star and chord diagrams\n");
                        row["support_representative"] = Value::Null;
                    }
                }
            }
        }
        rows.push(row);
    }
    render(format, &rows, &["type", "k", "m", "dim", "representative"], || text)
}

pub fn cmd_check(
    gc: &GraphComplex,
    which: CheckArg,
    kind: TypeSel,
    kmax: i64,
    format: Format,
    progress: &dyn Fn(String),
) -> CliResult<(String, u8)> {
    if kmax < 1 {
        return Err(usage("--kmax must be at least 1"));
    }
    let mut outcomes = Vec::new();
    for check in which.checks() {
        for kind in kind.kinds() {
            for k in 1..=kmax {
                progress(format!("{} {kind} k={k}", check.as_str()));
                outcomes.extend(run_check(gc, check, kind, k)?);
            }
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let rows: Vec<Value> = outcomes.iter().map(serde_json::to_value).collect::<Result<_, _>>()?;
    let text = || {
        let mut s = String::new();
        for o in &outcomes {
            let m = o.m.map(|m| format!(" m={m}")).unwrap_or_default();
            let verdict = if o.passed { "pass" } else { "FAIL" };
            let _ = writeln!(s, "{verdict} {} {} k={}{m}: {}", o.check.as_str(), o.kind, o.k, o.detail);
        }
        let _ = writeln!(s, "{} checks, {failed} failed", outcomes.len());
        s
    };
    let out = render(format, &rows, &["check", "type", "k", "m", "passed", "detail"], text)?;
    Ok((out, if failed == 0 { 0 } else { EXIT_CHECK }))
}

pub fn cmd_matrix(gc: &GraphComplex, kind: ComplexType, k: i64, m: i64, cache: Option<&std::path::Path>) -> CliResult<String> {
    let mat = gc.matrix_of_delta(kind, k, m)?;
    let describe = |m: i64| -> CliResult<String> {
        let name = cache_file_name(kind, k, m);
        let checksum = match cache {
            Some(dir) if cache_path(dir, kind, k, m).exists() => read_verified(&cache_path(dir, kind, k, m))?.0.checksum,
            _ => {
                let basis = gc.basis(kind, k, m)?;
                crate::enumeration::body_checksum(&basis.to_jsonl_body())
            }
        };
        Ok(format!("{name} sha256={checksum}"))
    };
    let header = vec![format!("rows {}", describe(m + 1)?), format!("cols {}", describe(m)?)];
    Ok(mat.to_triplets(&header))
}

fn cmd_cache(gc: &GraphComplex, action: &CacheAction, dir: &std::path::Path, format: Format) -> CliResult<(String, u8)> {
    let files = || -> CliResult<Vec<PathBuf>> {
        let mut v: Vec<PathBuf> = match std::fs::read_dir(dir) {
            Ok(rd) => rd
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| {
                    p.file_name()
                        .and_then(|n| n.to_str())
                        .is_some_and(|n| n.starts_with("basis_") && n.ends_with(".jsonl"))
                })
                .collect(),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(source) => {
                return Err(GraphError::Io {
                    path: dir.to_path_buf(),
                    source,
                }
                .into())
            }
        };
        v.sort();
        Ok(v)
    };
    let name = |p: &PathBuf| p.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
    match action {
        CacheAction::Build(grid) => {
            let mut rows = Vec::new();
            for (kind, k, m) in grid.cells() {
                let basis = gc.basis(kind, k, m)?;
                rows.push(json!({"file": cache_file_name(kind, k, m), "count": basis.len()}));
            }
            let text = || rows.iter().map(|r| format!("{} {}\n", r["file"].as_str().unwrap_or(""), r["count"])).collect();
            Ok((render(format, &rows, &["file", "count"], text)?, 0))
        }
        CacheAction::Verify | CacheAction::List => {
            let mut rows = Vec::new();
            let mut first_error = None;
            for p in files()? {
                match read_verified(&p) {
                    Ok((h, _)) => rows.push(json!({"file": name(&p), "count": h.count, "status": "ok"})),
                    Err(e) => {
                        rows.push(json!({"file": name(&p), "count": null, "status": e.to_string()}));
                        first_error.get_or_insert(e);
                    }
                }
            }
            let text = || {
                rows.iter()
                    .map(|r| format!("{} {} {}\n", r["file"].as_str().unwrap_or(""), r["count"], r["status"].as_str().unwrap_or("")))
                    .collect()
            };
            let out = render(format, &rows, &["file", "count", "status"], text)?;
            let code = match (action, first_error) {
                (CacheAction::Verify, Some(e)) => CliError::from(e).code,
                _ => 0,
            };
            Ok((out, code))
        }
        CacheAction::Clear => {
            let removed = files()?;
            for p in &removed {
                std::fs::remove_file(p).map_err(|source| GraphError::Io { path: p.clone(), source })?;
            }
            Ok((format!("removed {} cache files\n", removed.len()), 0))
        }
    }
}
