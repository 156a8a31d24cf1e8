//! `zeta-towers`: Ihara zeta functions, L-functions and Iwasawa invariants
//! of branched `Z_p`-towers given by a JSON datum file.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zeta_towers::datum_file::read_datum;

use commands::Outcome;

#[derive(Parser)]
#[command(name = "zeta-towers", version, about = "Exact zeta functions and Iwasawa invariants of graph towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// h(u), chi, kappa and Z^{-1} of one level.
    Zeta(Common),
    /// Per-character L-function data at one level.
    Lfunctions(Common),
    /// Vertices, edges, chi, kappa and ord_p kappa for levels 0..=max-level.
    Tower(Common),
    /// Closed-form and sweep-certified Iwasawa invariants.
    Invariants(Common),
    /// The identity battery at one level.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// Tower datum (JSON).
    file: PathBuf,
    #[arg(long, default_value_t = 1)]
    level: u32,
    /// Deepest level swept; defaults by prime (6 for p = 2, 4 for p = 3).
    #[arg(long)]
    max_level: Option<u32>,
    /// Order of the subgroup used by `verify` (default p).
    #[arg(long)]
    subgroup_order: Option<u64>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

fn run(cli: Cli) -> zeta_towers::Result<(Outcome, bool)> {
    let (args, which) = match &cli.command {
        Command::Zeta(a) => (a, 0),
        Command::Lfunctions(a) => (a, 1),
        Command::Tower(a) => (a, 2),
        Command::Invariants(a) => (a, 3),
        Command::Verify(a) => (a, 4),
    };
    let d = read_datum(&args.file)?;
    let outcome = match which {
        0 => commands::zeta(&d, args.level)?,
        1 => commands::lfunctions(&d, args.level)?,
        2 => commands::tower(&d, args.max_level)?,
        3 => commands::invariants(&d, args.max_level)?,
        _ => commands::verify(&d, args.level, args.subgroup_order)?,
    };
    Ok((outcome, args.json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, json)) => {
            let text = if json {
                outcome.report.to_json_string()
            } else {
                outcome.report.to_human()
            };
            print!("{text}");
            match outcome.failure {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
