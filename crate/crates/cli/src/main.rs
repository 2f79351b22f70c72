mod emit;
mod tools;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use genus4::suite::{self, SuiteError, SuiteOptions, Tag};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "genus4", version, about = "Verify and emit period matrices of the genus-4 Shimura family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the reproduction checks.
    Verify(VerifyArgs),
    /// Print a period matrix of one of the families.
    Emit(emit::EmitArgs),
    /// Run a single algorithm on user input.
    #[command(subcommand)]
    Tools(tools::ToolsCommand),
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every check (the default).
    #[arg(long, conflicts_with = "only")]
    all: bool,
    /// Run only the checks with this tag.
    #[arg(long, value_parser = parse_tag)]
    only: Option<Tag>,
    /// Working precision of ball arithmetic, in bits.
    #[arg(long, default_value_t = suite::DEFAULT_PREC, value_parser = clap::value_parser!(u64).range(2..=65536))]
    prec: u64,
    /// Treat documented divergences from printed values as failures.
    #[arg(long)]
    strict: bool,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

fn parse_tag(s: &str) -> Result<Tag, String> {
    s.parse::<Tag>().map_err(|_| {
        let names: Vec<&str> = Tag::ALL.iter().map(|t| t.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

/// Failure classes, mapped onto exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input or out-of-domain parameters.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    /// Unresolved conventions or uncertified ball computations.
    #[error("{0}")]
    Unresolved(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Unresolved(_) => 3,
        }
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::UnknownTag(_) => CliError::Usage(e.to_string()),
            SuiteError::Conventions(_) => CliError::Unresolved(e.to_string()),
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let opts = SuiteOptions { prec: args.prec, only: args.only, strict: args.strict };
    let run = suite::run(&opts)?;
    if args.json {
        let text = serde_json::to_string_pretty(&run.to_json()).expect("report serializes");
        emit_stdout(&text);
    } else {
        emit_stdout(run.render_text().trim_end());
    }
    Ok(run.exit_code() as u8)
}

/// Writes one block plus newline; a closed pipe is not an error.
pub fn emit_stdout(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() != io::ErrorKind::BrokenPipe {
            panic!("writing to stdout: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Emit(a) => emit::run(a).map(|()| 0),
        Command::Tools(t) => tools::run(t).map(|()| 0),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
