//! `hurwitz`: command-line access to the Hurwitz number engines.

mod cache;
mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz_core::Error;
use output::Format;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact double Hurwitz numbers with completed cycles.
#[derive(Parser, Debug)]
#[command(name = "hurwitz", version)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for cached character tables (overrides HURWITZ_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Do not read or write the character-table cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// A double Hurwitz number h^{r,s}_{mu,nu}.
    Hurwitz(HurwitzArgs),
    /// The completed (r+1)-cycle in the class algebra.
    CompletedCycle {
        #[arg(long)]
        r: u32,
    },
    /// Rules of the completed cut-and-join operator Q_{r+1}.
    Cutjoin {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 6)]
        weight: u32,
    },
    /// Fit the chamber polynomial through a point and check its structure.
    Chamber {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        /// Point `x1,..,xm;y1,..,yn` inside the chamber.
        #[arg(long)]
        point: String,
    },
    /// Compare a chamber jump with the wall-crossing formula.
    Wallcross {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        /// Wall `I;J` as one-based index lists, e.g. `1;1`.
        #[arg(long)]
        wall: String,
        /// A point in one of the two chambers along the wall.
        #[arg(long)]
        point: String,
        /// Evaluation points (need x_I > y_J); generated when omitted.
        #[arg(long = "eval")]
        eval: Vec<String>,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Bracket numbers read off the one-part polynomial.
    Brackets {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
    },
    /// Truncated generating series.
    Series(SeriesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Char,
    Fock,
    Patterns,
    All,
}

#[derive(Args, Debug)]
pub struct HurwitzArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub s: u32,
    /// Partition over 0, e.g. `3,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    /// Partition over infinity.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
    #[arg(long)]
    pub connected: bool,
    #[arg(long, value_enum, default_value_t = Engine::Char)]
    pub engine: Engine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "G")]
    G,
    #[value(name = "F")]
    F,
    #[value(name = "H")]
    H,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long)]
    pub r: u32,
    /// Cap on the weight in q (or p for H).
    #[arg(long, default_value_t = 5)]
    pub weight: u32,
    /// Cap on the power of u (order in beta for H).
    #[arg(long, default_value_t = 4)]
    pub u_cap: u32,
    /// For G: also build it from brackets and from the cut-and-join flow and compare.
    #[arg(long)]
    pub check: bool,
}

/// Failure of a command, with its exit status.
pub enum Failure {
    Core(Error),
    Mismatch(output::Report),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precondition(_) | Error::Config(_) => 2,
        Error::Consistency(_) | Error::InexactDivision(_) => 3,
        Error::Sampling(_) | Error::Cache(_) => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let config = RunConfig::parse();
    let cache = if config.no_cache {
        None
    } else {
        cache::CharacterCache::locate(config.cache_dir.clone())
    };
    if let Some(c) = &cache {
        log::debug!("character cache at {}", c.dir().display());
    }
    let mut stdout = std::io::stdout().lock();
    match commands::run(&config.command, cache.as_ref()) {
        Ok(report) => match report.write(config.format, &mut stdout) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Mismatch(report)) => {
            let _ = report.write(config.format, &mut stdout);
            eprintln!("error: cross-check failed");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
