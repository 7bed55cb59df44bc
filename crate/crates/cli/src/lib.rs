//! The `fano` command line: every experiment is seeded and reports JSON.
//!
//! Exit codes: 0 when the report's expectation is verified, 2 when it is not
//! (or the computation failed), 1 on usage and I/O errors.

pub mod args;
pub mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use fano_core::fermat::FermatError;
use fano_core::geometry::GeometryError;
use fano_core::monodromy::MonodromyError;
use fano_core::ExperimentConfig;

use args::{Cli, Command};

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Fermat(#[from] FermatError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            Self::Usage(_) => "usage",
            Self::Io { .. } => "io",
            Self::Input { .. } => "input",
            Self::Json(_) => "json",
            Self::Fermat(_) | Self::Geometry(_) | Self::Monodromy(_) => "computation",
        }
    }

    fn exit_code(&self) -> i32 {
        match self.kind() {
            "computation" => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: ExperimentConfig,
    pub expectation: String,
    pub verified: bool,
    pub result: Value,
    pub error: Option<String>,
}

/// What a run printed and how it exited.
#[derive(Debug)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn diagnostic(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

/// Parses `argv` (program name first), runs the experiment and renders the
/// report, writing it to `--out` when given.
pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let command = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let code = if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { EXIT_USAGE } else { 0 };
                    Execution { code, stdout: e.render().to_string(), stderr: String::new() }
                }
                kind => Execution {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: diagnostic(&format!("usage/{kind:?}"), e.render().to_string().trim()),
                },
            };
        }
    };
    let config = cli.opts.config();
    let outcome = match &cli.command {
        Command::Fermat4(c) => commands::fermat4(c, &config),
        Command::Fermat3(c) => commands::fermat3(c, &config),
        Command::X0(c) => commands::x0(c, &config),
        Command::Mono(c) => commands::mono(c, &config),
        Command::Line(c) => commands::line(c),
    };
    let (report, code) = match outcome {
        Ok(o) => {
            let code = if o.verified { EXIT_VERIFIED } else { EXIT_MISMATCH };
            (Report { command, config, expectation: o.expectation, verified: o.verified, result: o.result, error: None }, code)
        }
        Err(e) if e.exit_code() == EXIT_MISMATCH => (
            Report {
                command,
                config,
                expectation: String::new(),
                verified: false,
                result: Value::Null,
                error: Some(e.to_string()),
            },
            EXIT_MISMATCH,
        ),
        Err(e) => return Execution { code: e.exit_code(), stdout: String::new(), stderr: diagnostic(e.kind(), &e.to_string()) },
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &report.config.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Execution { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Execution { code: EXIT_USAGE, stdout: String::new(), stderr: diagnostic("io", &format!("{}: {e}", path.display())) },
        },
        None => Execution { code, stdout: text, stderr: String::new() },
    }
}
