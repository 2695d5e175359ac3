//! `nevlab <task> --config <path> [--out <path>] [--seed N] [--tol X]`.

pub mod config;
pub mod output;
pub mod tasks;

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use serde_json::json;

use crate::catalog::catalog;
use crate::error::Error;
use config::{ConfigError, Overrides, Task};
use tasks::TaskError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nevlab", version, about = "Counting functions, model spaces and the compactness criterion")]
pub struct Cli {
    /// Task to run.
    #[arg(value_enum, required_unless_present = "list_catalog")]
    pub task: Option<Task>,
    /// JSON experiment config.
    #[arg(long, required_unless_present = "list_catalog")]
    pub config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Print the built-in (phi, theta) pairs and exit.
    #[arg(long)]
    pub list_catalog: bool,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if cli.list_catalog {
        for e in catalog() {
            let _ = writeln!(stdout, "{}\t{:?}\t{}", e.name, e.expected, e.note);
        }
        return EXIT_PASS;
    }
    let (Some(task), Some(path)) = (cli.task, cli.config.clone()) else {
        return report_config(stderr, &ConfigError::new("<args>", "task and --config are required"));
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            return report_config(stderr, &ConfigError::new("--config", format!("{}: {e}", path.display())))
        }
    };
    let overrides = Overrides {
        seed: cli.seed,
        tol: cli.tol,
        out: cli.out,
    };
    let exp = match config::parse(&text).and_then(|c| config::validate(c, task, overrides)) {
        Ok(exp) => exp,
        Err(e) => return report_config(stderr, &e),
    };
    let outcome = match tasks::run_task(&exp) {
        Ok(o) => o,
        Err(TaskError::Config(e)) => return report_config(stderr, &e),
        Err(TaskError::Numeric(e)) => return report_numeric(stderr, &e),
    };
    let written = match &exp.out {
        Some(p) => output::write_atomic(p, &outcome.contents),
        None => stdout.write_all(outcome.contents.as_bytes()),
    };
    if let Err(e) = written {
        let record = json!({ "error": "io", "message": e.to_string() });
        let _ = writeln!(stderr, "{record}");
        return EXIT_CONFIG;
    }
    if outcome.passed {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

fn report_config(stderr: &mut dyn Write, e: &ConfigError) -> i32 {
    let record = json!({ "error": "config", "field": e.field, "message": e.message });
    let _ = writeln!(stderr, "{record}");
    EXIT_CONFIG
}

fn report_numeric(stderr: &mut dyn Write, e: &Error) -> i32 {
    let (kind, code) = match e {
        Error::NoConvergence { .. } | Error::ZeroNearContour { .. } | Error::NonIntegerWinding { .. } => {
            ("non-convergence", EXIT_NONCONVERGENCE)
        }
        _ => ("invalid-input", EXIT_CONFIG),
    };
    let record = json!({ "error": kind, "message": e.to_string() });
    let _ = writeln!(stderr, "{record}");
    code
}
