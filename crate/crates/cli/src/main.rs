//! `adz`: run one experiment from a JSON config and write a CSV or JSON table.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::Outcome;
use config::{CliError, CliResult};
use output::{write_report, Format, Provenance};

#[derive(Debug, Parser)]
#[command(name = "adz", version, about = "Ridgelet-type decompositions, random networks and bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Base seed, overriding the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for the parallel build.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Leave the wall-clock runtime out of the output.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Zonal decomposition with inversion and Abel-summation residuals.
    Decompose,
    /// Reconstruct a density from its dual-Radon representation.
    Represent,
    /// Random-feature network trials.
    Rvfl,
    /// Radial sigma example and its Laplacian.
    Sigma,
    /// Covering, Chernoff and random-network bounds.
    Bounds,
    /// Multiplier identities and asymptotics.
    MellinCheck,
}

fn execute<C>(
    common: &Common,
    run: impl FnOnce(&C, u64) -> CliResult<Outcome>,
    seed_of: impl FnOnce(&C) -> Option<u64>,
    format_of: impl FnOnce(&C) -> Format,
) -> CliResult<Vec<String>>
where
    C: serde::de::DeserializeOwned + Serialize,
{
    let path = common.config.as_ref().ok_or_else(|| CliError::Config("--config is required".into()))?;
    let cfg: C = config::load(path)?;
    let seed = common.seed.or_else(|| seed_of(&cfg)).unwrap_or(1);
    let format = format_of(&cfg);
    let resolved = serde_json::to_value(&cfg).expect("config serialises");
    let start = Instant::now();
    let outcome = run(&cfg, seed)?;
    let prov = Provenance {
        version: env!("CARGO_PKG_VERSION"),
        config: resolved,
        seed,
        runtime_s: (!common.no_timing).then(|| start.elapsed().as_secs_f64()),
    };
    let io = CliError::Io;
    match &common.out {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(io)?;
            let mut w = std::io::BufWriter::new(file);
            write_report(&mut w, &outcome.report, &prov, format).map_err(io)?;
            w.flush().map_err(io)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            write_report(&mut w, &outcome.report, &prov, format).map_err(io)?;
            w.flush().map_err(io)?;
        }
    }
    Ok(outcome.failures)
}

fn set_threads(threads: Option<usize>) -> CliResult<()> {
    let Some(k) = threads else { return Ok(()) };
    if k == 0 {
        return Err(CliError::Config("--threads must be positive".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    Ok(())
}

fn dispatch(cli: &Cli) -> CliResult<Vec<String>> {
    set_threads(cli.common.threads)?;
    let c = &cli.common;
    match cli.command {
        Command::Decompose => execute(c, commands::decompose::run, |g: &config::DecomposeConfig| g.seed, |g| g.format),
        Command::Represent => execute(c, commands::represent::run, |g: &config::RepresentConfig| g.seed, |g| g.format),
        Command::Rvfl => execute(c, commands::rvfl::run, |g: &config::RvflConfig| g.seed, |g| g.format),
        Command::Sigma => execute(c, commands::sigma::run, |_: &config::SigmaConfig| None, |g| g.format),
        Command::Bounds => execute(c, commands::bounds::run, |_: &config::BoundsConfig| None, |g| g.format),
        Command::MellinCheck => execute(c, commands::mellin::run, |_: &config::MellinConfig| None, |g| g.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let err = match dispatch(&cli) {
        Ok(failures) if failures.is_empty() => return ExitCode::SUCCESS,
        Ok(failures) => CliError::Tolerance(failures),
        Err(e) => e,
    };
    match &err {
        CliError::Tolerance(list) => {
            for f in list {
                eprintln!("adz: check failed: {f}");
            }
        }
        e => eprintln!("adz: {e}"),
    }
    ExitCode::from(err.exit_code() as u8)
}
