//! Command-line interface.
//!
//! Payload goes to `out`, diagnostics to `err`. Exit codes: 0 success,
//! 1 verification failure, 2 config or usage error, 3 fuel exhausted,
//! 4 I/O error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use genco_core::coding::decode;
use genco_core::conditions::parse_node;
use genco_core::densesets::{rank_bounded, DenseSet};
use genco_core::DEFAULT_FUEL;

use crate::config::{parse_dense, parse_help, RunConfig};
use crate::run::{build, build_cohen, build_plain, verify, RunError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_FUEL: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Environment variable overriding the search fuel.
pub const FUEL_VAR: &str = "GENCO_FUEL";

#[derive(Debug, Parser)]
#[command(
    name = "genco",
    version,
    about = "Code a target sequence into a Tree-Hechler generic, and check the result"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coded build: meet the roster and code the target, writing a transcript.
    Build {
        #[arg(long)]
        config: PathBuf,
        /// Transcript path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uncoded build: meet the roster only.
    Plain {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cohen pair build.
    Cohen {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a prefix of g with a help set.
    Decode {
        /// A help-set object, or a hechler run config.
        #[arg(long = "help-config")]
        help_config: PathBuf,
        /// The prefix of g, as `[a,b,c]`.
        #[arg(long)]
        g: String,
    },
    /// Check a transcript against its config.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        transcript: PathBuf,
    },
    /// Reachability rank of a node for a dense set.
    Rank {
        /// Dense-set spec as JSON.
        #[arg(long)]
        dense: String,
        /// The node, as `[a,b,c]`.
        #[arg(long)]
        node: String,
        #[arg(long = "max-rank")]
        max_rank: usize,
        #[arg(long)]
        width: usize,
    },
}

/// A failed command: its exit code and message.
struct Failure(i32, String);

fn config_error(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_CONFIG, e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_IO, format!("{}: {e}", path.display())))
}

fn read_config(path: &Path) -> Result<RunConfig, Failure> {
    RunConfig::parse(&read(path)?).map_err(|e| Failure(EXIT_CONFIG, format!("{}: {e}", path.display())))
}

fn emit(payload: &str, to: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let written = match to {
        Some(path) => std::fs::write(path, payload).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(payload.as_bytes()).map_err(|e| e.to_string()),
    };
    written.map_err(|e| Failure(EXIT_IO, e))
}

fn run_error(e: RunError) -> Failure {
    let code = if e.is_fuel() { EXIT_FUEL } else { EXIT_CONFIG };
    Failure(code, e.to_string())
}

/// Fuel from the environment value, if one is set.
pub fn fuel_from(var: Option<&str>) -> Result<u64, String> {
    match var {
        None => Ok(DEFAULT_FUEL),
        Some(s) => match s.trim().parse::<u64>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("{FUEL_VAR} must be a positive integer, found {s:?}")),
        },
    }
}

fn fuel() -> Result<u64, Failure> {
    let var = std::env::var(FUEL_VAR).ok();
    fuel_from(var.as_deref()).map_err(|e| Failure(EXIT_CONFIG, e))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Build { config, out: to } => {
            let c = read_config(&config)?;
            let text = build(&c, fuel()?).map_err(run_error)?;
            emit(&text, to.as_deref(), out)?;
        }
        Command::Plain { config, out: to } => {
            let c = read_config(&config)?;
            let text = build_plain(&c, fuel()?).map_err(run_error)?;
            emit(&text, to.as_deref(), out)?;
        }
        Command::Cohen { config, out: to } => {
            let c = read_config(&config)?;
            let text = build_cohen(&c).map_err(run_error)?;
            emit(&text, to.as_deref(), out)?;
        }
        Command::Decode { help_config, g } => {
            let help = parse_help(&read(&help_config)?)
                .map_err(|e| Failure(EXIT_CONFIG, format!("{}: {e}", help_config.display())))?;
            let g = parse_node(&g).map_err(|e| config_error(format!("--g: {e}")))?;
            let xs = decode(&help, g.entries()).map_err(config_error)?;
            let body: Vec<String> = xs.iter().map(u64::to_string).collect();
            emit(&format!("[{}]\n", body.join(",")), None, out)?;
        }
        Command::Verify { config, transcript } => {
            let c = read_config(&config)?;
            let text = read(&transcript)?;
            let report = verify(&c, &text).map_err(run_error)?;
            emit(&report.to_string(), None, out)?;
            if !report.all_passed() {
                return Err(Failure(
                    EXIT_VERIFY,
                    format!("{}: {} check(s) failed", transcript.display(), report.failures().len()),
                ));
            }
        }
        Command::Rank {
            dense,
            node,
            max_rank,
            width,
        } => {
            let spec = parse_dense(&dense).map_err(|e| config_error(format!("--dense: {e}")))?;
            let d = DenseSet::from_spec(&spec).map_err(|e| config_error(format!("--dense: {e}")))?;
            let node = parse_node(&node).map_err(|e| config_error(format!("--node: {e}")))?;
            // Pruning sets can be met without moving the stem.
            let rank = match &d {
                DenseSet::StemBased(s) => rank_bounded(s.as_ref(), &node, max_rank, width),
                DenseSet::Pruning(_) => Some(0),
            };
            let line = rank.map_or_else(|| "unknown".to_string(), |r| r.to_string());
            emit(&format!("{line}\n"), None, out)?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_CONFIG
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "genco: {message}");
            code
        }
    }
}
