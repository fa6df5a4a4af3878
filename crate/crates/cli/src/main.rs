//! `xop`: exact tables, admissibility reports, verification suites and
//! plotting samples for classical and exceptional orthogonal polynomials.
//!
//! Exit codes: 0 success, 1 a checked condition failed, 2 usage error.

mod commands;
mod spec;

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spec::{FamilyKind, ParamArgs};

#[derive(Parser)]
#[command(name = "xop", version, about = "Exact classical and exceptional Jacobi/Laguerre polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Table of exact coefficients, eigenvalues and values at x = 1.
    Gen {
        family: FamilyKind,
        #[command(flatten)]
        params: ParamArgs,
        /// Degree range `a..b` or a single degree.
        #[arg(long, default_value = "0..5")]
        n: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Admissibility report for the Xm-Jacobi parameters. Exit 0 iff admissible.
    Admissible {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a verification suite. Exit 0 iff every check passes.
    Verify {
        #[arg(value_parser = ["identities", "factorizations", "orthogonality", "norms", "flags", "all"])]
        suite: String,
        /// Family to check; inferred from the parameters when omitted.
        #[arg(long, value_enum)]
        family: Option<FamilyKind>,
        #[command(flatten)]
        params: ParamArgs,
        /// Flag example 1-5 for the `flags` suite.
        #[arg(long)]
        example: Option<u8>,
        /// Number of family members to check.
        #[arg(long, default_value_t = 9)]
        count: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Flag truncation depth.
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// CSV samples `x,value` of a weight or polynomial on a uniform grid.
    Sample {
        family: FamilyKind,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        what: commands::Sampled,
        /// Degree of the sampled polynomial.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Closed range `lo..hi`; defaults to interior points of the interval.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, result) = match cli.command {
        Command::Gen { family, params, n, format, out } => (out, commands::gen(family, &params, &n, format)),
        Command::Admissible { alpha, beta, m, format, out } => (out, commands::admissible(&alpha, &beta, m, format)),
        Command::Verify { suite, family, params, example, count, tol, kmax, format, out } => {
            let opts = commands::VerifyArgs { suite, family, params, example, count, tol, kmax, format };
            (out, commands::verify(&opts))
        }
        Command::Sample { family, params, what, n, points, range, out } => {
            (out, commands::sample(family, &params, what, n, points, range.as_deref()))
        }
    };
    match result.and_then(|(text, outcome)| write_output(out.as_deref(), &text).map(|_| outcome)) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(reason) => {
            eprintln!("{}", serde_json::json!({ "error": reason }));
            ExitCode::from(2)
        }
    }
}

fn write_output(path: Option<&str>, text: &str) -> Result<(), String> {
    let res = match path {
        Some(p) => File::create(p).and_then(|mut f| f.write_all(text.as_bytes())),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| format!("cannot write output: {e}"))
}
