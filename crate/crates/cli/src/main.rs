//! `gtrs`: decide confluence and normal-form properties of ground TRSs.

mod batch;
mod check;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use gtrs::decide::DecideError;
use gtrs::io::{build_report, parse_trs, render_text, ParseError, Report, ReportOptions};
use gtrs::{Property, Trs};

#[derive(Parser)]
#[command(name = "gtrs", version, about = "Decide CR, NFP, UNC and UNR of finite ground term rewrite systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the properties of one problem file.
    Decide {
        file: PathBuf,
        #[command(flatten)]
        opts: OutputArgs,
    },
    /// Decide every .trs file in a directory.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        opts: OutputArgs,
        /// Files decided concurrently (default: all cores).
        #[arg(long, short)]
        jobs: Option<usize>,
    },
    /// Re-check the witnesses in a JSON report against the problem file.
    CheckWitness {
        file: PathBuf,
        /// Output of `decide --witness --format json`.
        report: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Cr,
    Nfp,
    Unc,
    Unr,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Debug)]
struct OutputArgs {
    #[arg(long, short, value_enum, default_value_t = PropertyArg::All)]
    property: PropertyArg,
    #[arg(long, short, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include witnesses for negative verdicts.
    #[arg(long, short)]
    witness: bool,
    /// Include per-phase wall-clock times.
    #[arg(long, short)]
    timings: bool,
    /// Byte-identical output across runs: no timings.
    #[arg(long)]
    deterministic: bool,
}

impl OutputArgs {
    fn report_options(&self) -> ReportOptions {
        let properties = match self.property {
            PropertyArg::All => Property::ALL.to_vec(),
            PropertyArg::Cr => vec![Property::Cr],
            PropertyArg::Nfp => vec![Property::Nfp],
            PropertyArg::Unc => vec![Property::Unc],
            PropertyArg::Unr => vec![Property::Unr],
        };
        ReportOptions {
            properties,
            witnesses: self.witness,
            timings: self.timings && !self.deterministic,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Report { path: String, source: serde_json::Error },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{path}: {source}")]
    Decide { path: String, source: DecideError },
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Decide {
                source: DecideError::Inconsistent(_),
                ..
            }
            | CliError::Rejected(_) => 2,
            _ => 1,
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load(path: &Path) -> Result<Trs, CliError> {
    parse_trs(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn decide(path: &Path, trs: &Trs, opts: &ReportOptions) -> Result<Report, CliError> {
    build_report(&path.display().to_string(), trs, opts).map_err(|source| CliError::Decide {
        path: path.display().to_string(),
        source,
    })
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Decide { file, opts } => {
            let report = decide(&file, &load(&file)?, &opts.report_options())?;
            Ok(match opts.format {
                Format::Text => render_text(&report),
                Format::Json => json(&report),
            })
        }
        Command::Batch { dir, opts, jobs } => {
            let summary = batch::run(&dir, &opts.report_options(), jobs)?;
            Ok(match opts.format {
                Format::Text => batch::render_text(&summary, opts.report_options().timings),
                Format::Json => json(&summary),
            })
        }
        Command::CheckWitness { file, report } => check::run(&file, &report),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gtrs: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
