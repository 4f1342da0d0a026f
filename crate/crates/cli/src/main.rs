use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use toric_bm::Coefficients;
use toric_bm_cli::{commands, search, CliError, ComputeOptions, FanSource, Outcome, SearchOptions};

/// Borel–Moore homology of toric varieties from their fans.
///
/// A fan source is a fan file path or `preset <name> <params...>`.
#[derive(Parser)]
#[command(name = "toric-bm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the homology report of a fan.
    Compute {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        source: Vec<String>,
        /// Z, Q or Fq:<prime>
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        json: bool,
        /// Also print E2 term ranks and E3 groups.
        #[arg(long)]
        dump_pages: bool,
        /// Append independent oracle verdicts; exit 2 if one fails.
        #[arg(long)]
        check_oracles: bool,
    },
    /// Run the fan checks and report each one.
    Validate {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        source: Vec<String>,
    },
    /// Print the fan file of a named fan.
    Preset {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        params: Vec<String>,
    },
    /// Subdivide a seed fan at random and log fans with torsion.
    SearchTorsion {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        source: Vec<String>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: usize,
        /// Directory for the fan files and reports of findings.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Compute {
            source,
            coeff,
            json,
            dump_pages,
            check_oracles,
        } => {
            let coefficients = Coefficients::parse(&coeff).map_err(|e| CliError::Input(e.to_string()))?;
            let opts = ComputeOptions {
                coefficients,
                json,
                dump_pages,
                check_oracles,
            };
            commands::compute(&FanSource::from_args(&source)?, &opts)
        }
        Command::Validate { source } => commands::validate(&FanSource::from_args(&source)?),
        Command::Preset { params } => commands::preset(&params),
        Command::SearchTorsion { source, seed, trials, out } => {
            search::search(&FanSource::from_args(&source)?, &SearchOptions { seed, trials, out })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
