//! `quandles`: classification, verification, census and inspection of
//! finite quandles from the command line.
//!
//! Exit codes: 0 when everything checked passes, 1 on a verification
//! failure (including an exhausted time budget), 2 on usage or input errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quandle_core::classify::{check_prime, Family, Level};

#[derive(Parser, Debug)]
#[command(
    name = "quandles",
    version,
    about = "Connected quandles of order p³ and friends"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Quick => Level::Quick,
            LevelArg::Full => Level::Full,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the representatives of every connected non-affine quandle of order p³.
    Classify {
        #[arg(short = 'p', value_parser = parse_prime)]
        p: u32,
        /// Restrict to one family, e.g. table2.row3.
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
    },
    /// Build and check every record, then check pairwise non-isomorphism.
    Verify {
        #[arg(short = 'p', value_parser = parse_prime)]
        p: u32,
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// Defaults to full at p = 5 and quick otherwise.
        #[arg(long, value_enum)]
        level: Option<LevelArg>,
        /// Give up after this many seconds and report what was done.
        #[arg(long, value_parser = parse_budget)]
        budget: Option<Duration>,
        /// Append a deliberately wrong record (for testing the failure path).
        #[arg(long, hide = true)]
        inject_corrupt: bool,
    },
    /// Report the structure of a quandle given as a table file.
    Inspect { path: PathBuf },
    /// Count quandles of order n up to isomorphism (n ≤ 6).
    Enumerate { n: usize },
    /// Decide whether two quandle table files are isomorphic.
    Iso { left: PathBuf, right: PathBuf },
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    check_prime(p).map_err(|e| e.to_string())?;
    Ok(p)
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: quandle_core::Error| e.to_string())
}

fn parse_budget(s: &str) -> Result<Duration, String> {
    let secs: f64 = s
        .parse()
        .map_err(|_| format!("{s:?} is not a number of seconds"))?;
    if !(secs.is_finite() && secs > 0.0) {
        return Err("budget must be positive".into());
    }
    Ok(Duration::from_secs_f64(secs))
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Fail {
    /// Bad input or arguments; exit 2.
    Usage(String),
    /// A check failed and was already reported; exit 1.
    Failed,
    /// Anything else, e.g. an I/O error; exit 1.
    Runtime(anyhow::Error),
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Runtime(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Failed) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Runtime(e)) => {
            // A closed pipe (e.g. `| head`) is not worth a message.
            let broken_pipe = e
                .downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe);
            if !broken_pipe {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(1)
        }
    }
}
