//! Command-line front end: parse a constraint program, propagate, look for
//! anomalies and print a report.

pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use fpfilter::errfun::EvalMode;
use fpfilter::propagate::Config;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EvalModeArg {
    Exact,
    Composed,
}

#[derive(Debug, Parser)]
#[command(name = "fpfilter", version, about = "Interval propagation and anomaly search for floating-point constraint programs")]
pub struct Cli {
    /// Program file
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Node budget of each anomaly search
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub search_budget: u64,
    #[arg(long, value_enum, default_value = "exact")]
    pub eval_mode: EvalModeArg,
    /// Stop propagation after this many constraint revisions
    #[arg(long)]
    pub max_iterations: Option<u64>,
}

/// Runs the tool. Exit codes: 0 done, 1 usage error, 2 I/O or parse error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let src = match std::fs::read_to_string(&cli.input) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", cli.input.display());
            return 2;
        }
    };
    let prog = match parse::parse(&src) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {}:{e}", cli.input.display());
            return 2;
        }
    };
    let cfg = Config {
        eval_mode: match cli.eval_mode {
            EvalModeArg::Exact => EvalMode::Exact,
            EvalModeArg::Composed => EvalMode::Composed,
        },
        max_iterations: cli.max_iterations,
        search_budget: cli.search_budget,
    };
    let rep = report::analyze(&prog, &cfg);
    let text = match cli.output {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report::to_json(&prog, &rep)).expect("serializable report");
            s.push('\n');
            s
        }
        OutputFormat::Text => report::to_text(&prog, &rep),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return 2;
    }
    0
}
