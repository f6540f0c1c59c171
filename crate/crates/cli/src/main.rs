//! `hypocomp`: classify linear-fractional symbols and report what is known
//! about `C_{ψ,φ}` on the Hardy and weighted Bergman spaces.
//!
//! Exit codes: 0 decided, 1 a worked example failed, 2 input error,
//! 3 theory unavailable (the report is still printed), 4 numeric
//! non-convergence.

mod commands;
mod failure;
mod parse;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hypocomp::linalg::eigenvalues;
use hypocomp::matrixrep::DEFAULT_SEED;
use hypocomp::theory::Citation;

use commands::{Config, Run};
use failure::Failure;

const DEFAULT_MAX_N: usize = 1024;
const MIN_N: usize = 8;
const DEFAULT_N: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hypocomp", version, about = "Weighted composition operators with linear-fractional symbols")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// hardy or bergman:<alpha>
    #[arg(long, global = true)]
    space: Option<String>,
    /// Truncation order of the finite section [default: 64, or the cap if lower].
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Same as --format json.
    #[arg(long, global = true)]
    json: bool,
    /// With --format csv, dump eigenvalues of the section instead of its entries.
    #[arg(long, global = true)]
    eigenvalues: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Unweighted verdict and fixed-point data for a map.
    Classify {
        #[arg(long)]
        map: String,
    },
    /// Weighted verdict, with a witness search if --numeric.
    Check {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        numeric: bool,
    },
    /// Closed-form spectral data; --numeric adds finite-section diagnostics.
    Spectral {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        numeric: bool,
    },
    /// Re-run the frozen set of worked examples.
    WorkedExamples,
}

fn max_n() -> Result<usize, Failure> {
    match std::env::var("HYPOCOMP_MAX_N") {
        Err(_) => Ok(DEFAULT_MAX_N),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap >= MIN_N => Ok(cap),
            _ => Err(Failure::Input(format!("HYPOCOMP_MAX_N must be an integer >= {MIN_N}, got {v:?}"))),
        },
    }
}

fn config(cli: &Cli, format: Format) -> Result<Config, Failure> {
    let cap = max_n()?;
    let n = cli.n.unwrap_or(DEFAULT_N.min(cap));
    if n < MIN_N || n > cap {
        return Err(Failure::Input(format!("--n must lie in [{MIN_N}, {cap}], got {n}")));
    }
    let space = match &cli.space {
        Some(s) => parse::space(s)?,
        None => hypocomp::SpaceSpec64::hardy(),
    };
    Ok(Config {
        space,
        space_given: cli.space.is_some(),
        n,
        seed: cli.seed,
        witness_order: cap.min(256),
        want_matrix: format == Format::Csv,
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let format = if cli.json { Format::Json } else { cli.format };
    let cfg = config(cli, format)?;
    if format == Format::Csv && matches!(cli.command, Command::WorkedExamples) {
        return Err(Failure::Input("worked-examples has no matrix to dump as CSV".into()));
    }
    let start = Instant::now();
    let Run { mut report, matrix } = match &cli.command {
        Command::Classify { map } => commands::cmd_classify(&cfg, map)?,
        Command::Check { psi, map, numeric } => commands::cmd_check(&cfg, psi, map, *numeric)?,
        Command::Spectral { psi, map, numeric } => commands::cmd_spectral(&cfg, psi, map, *numeric)?,
        Command::WorkedExamples => commands::cmd_worked_examples(&cfg)?,
    };
    report.wall_time = start.elapsed().as_secs_f64();
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => {
            let m = matrix.expect("CSV runs build the section");
            if cli.eigenvalues {
                print!("{}", report::eigenvalue_csv(&eigenvalues(&m).map_err(Failure::from)?));
            } else {
                print!("{}", report::matrix_csv(&m));
            }
        }
    }
    if let Some(v) = report.verdict.as_ref().filter(|v| v.citation == Citation::NoExclusion.label()) {
        return Err(Failure::Unavailable(format!("no result decides this case ({})", v.outcome)));
    }
    let failed: Vec<&str> = report.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
    if !failed.is_empty() {
        return Err(Failure::Mismatch(format!("worked examples failed: {}", failed.join("; "))));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("hypocomp: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
