//! Expression calculator for the euclidean Clifford algebra.
//!
//! ```text
//! eucliff --dim 3 --metric identity --eval "e1^e2"
//! e12
//! ```

pub mod eval;
pub mod lexer;
pub mod parser;
pub mod render;

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::Parser;
use eucliff::blade::BladeIndex;
use eucliff::metric::io::{BasisSpec, MetricSpec};
use eucliff::{b_metric, build_cayley_table, EuclideanMetric, Multivector};

pub use eval::{Outcome, Session, Value};

/// A parse or evaluation failure at a 1-based column.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("column {col}: {message}")]
    Parse { col: usize, message: String },
    #[error("column {col}: {message}")]
    Eval { col: usize, message: String },
}

impl CliError {
    pub fn parse(col: usize, message: impl Into<String>) -> CliError {
        CliError::Parse {
            col,
            message: message.into(),
        }
    }

    pub fn eval(col: usize, message: impl Into<String>) -> CliError {
        CliError::Eval {
            col,
            message: message.into(),
        }
    }

    pub fn col(&self) -> usize {
        match self {
            CliError::Parse { col, .. } | CliError::Eval { col, .. } => *col,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_EVAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "eucliff",
    version,
    about = "Evaluate expressions in the euclidean Clifford algebra"
)]
pub struct Args {
    /// Dimension of the underlying vector space (1 to 12).
    #[arg(long)]
    pub dim: Option<usize>,

    /// Metric: `identity` or a JSON file `{"dim": n, "gram": [[...], ...]}`.
    #[arg(long, value_name = "PATH|identity")]
    pub metric: Option<String>,

    /// Use the metric induced by a basis, read from a JSON file
    /// `{"dim": n, "vectors": [[...], ...]}` (vectors are columns).
    #[arg(long, value_name = "PATH", conflicts_with = "metric")]
    pub basis: Option<PathBuf>,

    /// Expression or assignment to evaluate; repeatable.
    #[arg(long = "eval", value_name = "EXPR", allow_hyphen_values = true)]
    pub evals: Vec<String>,

    /// Print results as JSON.
    #[arg(long)]
    pub json: bool,

    /// Read lines from standard input after the --eval lines.
    #[arg(long)]
    pub repl: bool,

    /// Print the Cayley table of the configured metric as JSON lines.
    #[arg(long)]
    pub table: bool,
}

fn read(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

/// Builds the metric described by the flags.
pub fn configure(args: &Args) -> Result<EuclideanMetric, String> {
    if let Some(path) = &args.basis {
        let shown = path.display().to_string();
        let spec = BasisSpec::parse(&read(&shown)?)
            .map_err(|e| format!("invalid basis file {shown}: {e}"))?;
        if let Some(dim) = args.dim {
            if dim != spec.dim {
                return Err(format!(
                    "invalid basis file {shown}: --dim {dim} but the file has dim {}",
                    spec.dim
                ));
            }
        }
        let basis = spec
            .build()
            .map_err(|e| format!("invalid basis file {shown}: {e}"))?;
        return b_metric(&basis).map_err(|e| format!("invalid basis file {shown}: {e}"));
    }
    match args.metric.as_deref() {
        None | Some("identity") => {
            let dim = args
                .dim
                .ok_or("--dim is required with the identity metric")?;
            EuclideanMetric::identity(dim).map_err(|e| e.to_string())
        }
        Some(path) => {
            let spec = MetricSpec::parse(&read(path)?)
                .map_err(|e| format!("invalid metric file {path}: {e}"))?;
            spec.build(args.dim)
                .map_err(|e| format!("invalid metric file {path}: {e}"))
        }
    }
}

fn report(err: &mut dyn Write, line: &str, e: &CliError) {
    let _ = writeln!(err, "error: {e}");
    let _ = writeln!(err, "  {line}");
    let _ = writeln!(err, "  {}^", " ".repeat(e.col().saturating_sub(1)));
}

fn emit(out: &mut dyn Write, outcome: &Outcome, json: bool) -> std::io::Result<()> {
    let text = if json {
        render::outcome_json(outcome)
    } else {
        render::outcome_text(outcome)
    };
    writeln!(out, "{text}")
}

fn write_table(out: &mut dyn Write, metric: &EuclideanMetric) -> Result<(), String> {
    let table = build_cayley_table(metric).map_err(|e| e.to_string())?;
    let index = BladeIndex::new(metric.dim());
    for a in index.canonical_order() {
        for b in index.canonical_order() {
            let terms: Vec<_> = table
                .entry(a, b)
                .iter()
                .map(|&(m, c)| (eucliff::BladeMask(m), c))
                .collect();
            let product =
                Multivector::from_terms(metric.dim(), &terms).map_err(|e| e.to_string())?;
            writeln!(out, "{}", render::table_row_json(a, b, &product.terms()))
                .map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

/// Runs the CLI and returns the process exit code: 0 on success, 1 for a
/// parse or evaluation error, 2 for invalid flags or an invalid metric.
/// `interactive` turns on the REPL prompt.
pub fn run<I, S>(
    argv: I,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    interactive: bool,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let metric = match configure(&args) {
        Ok(m) => m,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return EXIT_CONFIG;
        }
    };

    if args.table {
        if let Err(message) = write_table(out, &metric) {
            let _ = writeln!(err, "error: {message}");
            return EXIT_EVAL;
        }
    }

    let mut session = Session::new(metric);
    for line in &args.evals {
        match session.execute(line) {
            Ok(outcome) => {
                if emit(out, &outcome, args.json).is_err() {
                    return EXIT_EVAL;
                }
            }
            Err(e) => {
                report(err, line, &e);
                return EXIT_EVAL;
            }
        }
    }

    if args.repl || (args.evals.is_empty() && !args.table) {
        repl(&mut session, input, out, err, args.json, interactive);
    }
    EXIT_OK
}

fn repl(
    session: &mut Session,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    json: bool,
    interactive: bool,
) {
    let mut line = String::new();
    loop {
        if interactive {
            let _ = write!(out, "> ");
            let _ = out.flush();
        }
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => break,
            Ok(_) => {}
        }
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == ":quit" || trimmed == ":q" {
            break;
        }
        match session.execute(trimmed) {
            Ok(outcome) => {
                let _ = emit(out, &outcome, json);
            }
            Err(e) => report(err, trimmed, &e),
        }
    }
}
