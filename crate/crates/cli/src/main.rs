use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fimhom_cli::compute::{compute, emit, ComputeArgs};
use fimhom_cli::error::{CliError, Result};
use fimhom_cli::io::write_atomic;
use fimhom_cli::suites::{run_suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "fimhom", version, about = "Exact computations with truncated FI^m-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (or `all`) and report per-case verdicts.
    Verify {
        suite: String,
        #[arg(long)]
        m: Option<usize>,
        /// Truncation bound, e.g. `3,3`.
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<usize>>,
        /// Inclusive range of diagonal truncations, e.g. `2..5`.
        #[arg(long, value_parser = parse_range)]
        t_range: Option<(usize, usize)>,
        #[arg(long)]
        max_n: Option<usize>,
        /// Overridden by the FIMHOM_SEED environment variable.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply one operation to module files.
    Compute {
        /// One of build, coind, shift, tensor, nakayama, torsion, ext1.
        op: String,
        /// For build: free:S, conc:S, nu-free:S, coregular or zero.
        #[arg(long)]
        recipe: Option<String>,
        /// For build: truncation bound, e.g. `3` or `2,2`.
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<usize>>,
        /// Coordinate, 1-based.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long = "in")]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        v: Option<PathBuf>,
        #[arg(long)]
        w: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    Ok((a, b))
}

fn seed_from_env(default: u64) -> Result<u64> {
    match std::env::var("FIMHOM_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("FIMHOM_SEED is not a u64: {s:?}"))),
        Err(_) => Ok(default),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            suite,
            m,
            t,
            t_range,
            max_n,
            seed,
            out,
        } => {
            let cfg = SuiteConfig {
                suite,
                m,
                t,
                t_range,
                max_n,
                seed: seed_from_env(seed)?,
            };
            let report = run_suite(&cfg)?;
            if let Some(p) = out {
                write_atomic(&p, &report.to_json())?;
            }
            print!("{}", report.text_summary());
            Ok(!report.has_failures())
        }
        Command::Compute {
            op,
            recipe,
            t,
            i,
            inputs,
            v,
            w,
            out,
        } => {
            let args = ComputeArgs {
                op,
                i,
                inputs,
                v,
                w,
                out,
                recipe,
                t,
            };
            let result = compute(&args)?;
            print!("{}", emit(&args, &result)?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
