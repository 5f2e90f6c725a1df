use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

mod commands;
mod input;

/// Exhaustive checks on finite categories.
///
/// Inputs are catspec files, `finset:N` or `zoo:NAME`. Exit status is 0 when
/// every check passes, 1 when a counterexample was found and 2 on usage or
/// parse errors. CATKERNEL_MAX_MS bounds the wall-clock time of a run.
#[derive(Parser)]
#[command(name = "catkernel", version)]
struct Cli {
    /// Emit one JSON document instead of the text summary
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a catspec file, check the axioms and any `# expect` annotations
    Validate { file: String },
    /// Classify every object and morphism
    Analyze { input: String },
    /// Chosen terminal, products and exponentials
    Limits { input: String },
    /// Cartesian closure of slices, and local cartesian closure
    Slice {
        input: String,
        /// Only the slice over this object
        #[arg(long)]
        base: Option<String>,
    },
    /// Profile a functor as a fibration
    Fib {
        /// catspec file holding the total category and the functor block
        total: Option<String>,
        /// catspec file for the base category
        base: Option<String>,
        #[arg(long)]
        functor: Option<String>,
        /// The codomain functor of the arrow category of this input
        #[arg(long, conflicts_with_all = ["total", "base", "predicates"])]
        codomain: Option<String>,
        /// Predicates on finite sets of size at most N
        #[arg(long, value_name = "N", conflicts_with_all = ["total", "base"])]
        predicates: Option<u32>,
    },
    /// Eilenberg–Moore census, theorem verdicts and the exponent probe
    Monad {
        /// maybe or writer:<monoid>
        #[arg(long, default_value = "maybe")]
        monad: String,
        #[arg(long, default_value_t = 3)]
        max_size: u32,
    },
    /// Run a law suite
    Laws {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_size: u32,
        /// Monad for the monad, strength and algebra suites
        #[arg(long, default_value = "maybe")]
        monad: String,
        /// Stop each law after this many bindings
        #[arg(long)]
        bound: Option<u64>,
    },
    /// List the bundled example categories and check their annotations
    Zoo { name: Option<String> },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
        }
    }
}

/// Every JSON document: the envelope fields, then the command's body.
#[derive(Serialize)]
struct Document<'a> {
    schema: u32,
    command: &'a str,
    ok: bool,
    #[serde(flatten)]
    body: &'a Value,
}

pub struct Report {
    pub command: &'static str,
    pub value: Value,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &'static str, value: Value, ok: bool) -> Self {
        Report { command, value, ok }
    }

    fn document(&self) -> Document<'_> {
        Document { schema: 1, command: self.command, ok: self.ok, body: &self.value }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let doc = serde_json::to_value(self.document()).expect("serializable");
        summarize(&doc, "", &mut out);
        out
    }
}

/// Scalars as `key: value`, arrays by length, objects one level deep.
fn summarize(v: &Value, indent: &str, out: &mut String) {
    let Value::Object(map) = v else { return };
    for (k, v) in map {
        match v {
            Value::Array(items) => out.push_str(&format!("{indent}{k}: {} entries\n", items.len())),
            Value::Object(_) if indent.is_empty() => {
                out.push_str(&format!("{k}:\n"));
                summarize(v, "  ", out);
            }
            Value::Object(inner) => out.push_str(&format!("{indent}{k}: {} fields\n", inner.len())),
            Value::String(s) => out.push_str(&format!("{indent}{k}: {s}\n")),
            other => out.push_str(&format!("{indent}{k}: {other}\n")),
        }
    }
}

fn budget() -> Result<Option<Duration>, CliError> {
    match std::env::var("CATKERNEL_MAX_MS") {
        Ok(s) => s.trim().parse().map(|ms| Some(Duration::from_millis(ms))).map_err(|_| CliError::Usage(format!("CATKERNEL_MAX_MS={s} is not a number"))),
        Err(_) => Ok(None),
    }
}

fn run(command: Command, deadline: Option<Instant>) -> Result<Report, CliError> {
    use commands::*;
    match command {
        Command::Validate { file } => validate(&file),
        Command::Analyze { input } => analyze(&input),
        Command::Limits { input } => limits(&input),
        Command::Slice { input, base } => slice(&input, base.as_deref()),
        Command::Fib { total, base, functor, codomain, predicates } => {
            fib(FibArgs { total: total.as_deref(), base: base.as_deref(), functor: functor.as_deref(), codomain: codomain.as_deref(), predicates })
        }
        Command::Monad { monad: m, max_size } => monad(&m, max_size),
        Command::Laws { suite, max_size, monad, bound } => laws(&suite, max_size, &monad, bound, deadline),
        Command::Zoo { name } => zoo_cmd(name.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match budget() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let deadline = budget.map(|b| Instant::now() + b);
    let (tx, rx) = mpsc::channel();
    let command = cli.command;
    std::thread::spawn(move || {
        let _ = tx.send(run(command, deadline));
    });
    // law suites stop themselves at the deadline; everything else is cut off
    let result = match budget {
        Some(b) => match rx.recv_timeout(b + Duration::from_millis(500)) {
            Ok(r) => r,
            Err(_) => {
                eprintln!("error: time budget of {} ms exceeded", b.as_millis());
                return ExitCode::from(2);
            }
        },
        None => match rx.recv() {
            Ok(r) => r,
            Err(_) => return ExitCode::from(2),
        },
    };
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.document()).expect("serializable"));
            } else {
                print!("{}", report.text());
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
