//! Command-line front end: one subcommand per verification campaign.
//!
//! [`run`] parses the arguments, validates every numeric parameter before any
//! computation, runs the campaign and renders a [`report::Report`].  The exit
//! code is
//!
//! * `0` — every asserted check passed (probes never count),
//! * `1` — some asserted check failed,
//! * `2` — usage or validation error,
//! * `3` — internal inconsistency, with the failing invariant named.
//!
//! `ECL_THREADS` caps the worker pool used by the parallel checks.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod parse;
pub mod report;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use ecl_core::Error;
use serde::Serialize;

use report::Report;

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "ecl",
    version,
    about = "Verification campaigns for elliptic Casimir connections"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub emit: Emit,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// Root system data: roots, Gram matrix, dual Coxeter number, pair classes.
    Roots(commands::roots::Args),
    /// Defining properties of the theta function at seeded random points.
    ThetaCheck(commands::theta::Args),
    /// Coefficients of the kernel k(z, x) and their checks.
    KCoeffs(commands::kcoeffs::Args),
    /// Exact operator identities of the type-A model.
    VerifyDdca(commands::ddca::Args),
    /// The sum-pair constant by three independent methods.
    ConstantC(commands::constant::Args),
    /// Algebraic flatness relations (and curvature) for a model representation.
    Flatness(commands::flatness::Args),
    /// Comparison of the gl_k KZB form with the elliptic Casimir form.
    VerifyDuality(commands::duality::Args),
    /// Parallel transport along paths read from a JSON file.
    Monodromy(commands::monodromy::Args),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Roots(_) => "roots",
            Command::ThetaCheck(_) => "theta-check",
            Command::KCoeffs(_) => "k-coeffs",
            Command::VerifyDdca(_) => "verify-ddca",
            Command::ConstantC(_) => "constant-c",
            Command::Flatness(_) => "flatness",
            Command::VerifyDuality(_) => "verify-duality",
            Command::Monodromy(_) => "monodromy",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Outcome {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

/// Maps a library error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 3,
        _ => 2,
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("ECL_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("ECL_THREADS must be a positive integer, got '{v}'"))?;
    // A pool that is already built (repeated in-process runs) is fine.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    if let Err(msg) = configure_threads() {
        return Outcome::usage(format!("error: {msg}\n"));
    }
    let report = match commands::dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            let code = exit_code(&e);
            let prefix = if code == 3 { "internal error" } else { "error" };
            return Outcome {
                code,
                stdout: String::new(),
                stderr: format!("{prefix}: {e}\n"),
            };
        }
    };
    render(&cli, &report)
}

fn render(cli: &Cli, report: &Report) -> Outcome {
    let body = match cli.emit {
        Emit::Json => report.to_json(),
        Emit::Csv => report.to_csv(),
        Emit::Text => report.to_text(),
    };
    let code = if report.passed { 0 } else { 1 };
    match &cli.out {
        None => Outcome {
            code,
            stdout: body,
            stderr: String::new(),
        },
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome {
                code,
                stdout: format!(
                    "{}: report written to {} ({})\n",
                    report.subcommand,
                    path.display(),
                    if report.passed { "pass" } else { "FAIL" }
                ),
                stderr: String::new(),
            },
            Err(e) => Outcome::usage(format!("error: cannot write {}: {e}\n", path.display())),
        },
    }
}
