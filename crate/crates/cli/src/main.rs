//! `chiwb run <session>`: batch driver for the multiplicity workbench.

mod report;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use chiwb::Field;
use clap::{Parser, Subcommand, ValueEnum};

use report::{Outcome, Status};

#[derive(Parser)]
#[command(name = "chiwb", version, about = "Intersection multiplicity workbench")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session file and print one report per command.
    Run {
        session: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Override the field of every ring, and set the field for scans:
        /// `QQ` or `FF:<p>`.
        #[arg(long, value_parser = parse_field)]
        field: Option<Field>,
        /// Reduction-step budget shared by the whole session.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Seed for the `scan` corpora.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add wall-clock milliseconds to each result.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "QQ" {
        return Ok(Field::Rationals);
    }
    let p = s
        .strip_prefix("FF:")
        .ok_or_else(|| format!("expected QQ or FF:<p>, found `{s}`"))?;
    let p: u64 = p.parse().map_err(|_| format!("`{p}` is not an integer"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

/// 0 when every command succeeded, 2 when an assertion failed and nothing
/// else went wrong, 1 on any input or engine error.
fn exit_code(results: &[Outcome]) -> u8 {
    if results.iter().any(|r| r.status == Status::Error) {
        1
    } else if results.iter().any(|r| r.status == Status::AssertionFailed) {
        2
    } else {
        0
    }
}

fn main() -> ExitCode {
    let Cmd::Run {
        session,
        format,
        field,
        budget,
        seed,
        timing,
    } = match Cli::try_parse() {
        Ok(cli) => cli.command,
        // usage errors are input errors; clap's own code 2 means a failed
        // assertion here
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => e.exit(),
    };
    let opts = session::Options {
        field,
        budget,
        seed,
        timing,
    };
    let results = match std::fs::read_to_string(&session) {
        Err(e) => vec![Outcome::message(
            format!("read {}", session.display()),
            Status::Error,
            e.to_string(),
        )],
        Ok(text) => match chiwb::parse::parse_session(&text) {
            Err(e) => vec![Outcome::message("parse".into(), Status::Error, e.to_string())],
            Ok(parsed) => session::run(&parsed, &opts),
        },
    };
    let out = match format {
        Format::Json => report::to_json(&results),
        Format::Text => report::to_text(&results),
    };
    print!("{out}");
    ExitCode::from(exit_code(&results))
}
