//! `latmon`: scriptable front end for the lattice toolkit.
//!
//! Every command prints `KEY=VALUE` lines. Mathematical outcomes, including
//! negative ones, exit 0; only I/O, parse and precondition failures exit
//! nonzero.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "latmon", version, about = "Exact lattice computations for elliptic-surface monodromy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Do not print the report on stdout.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, signature, determinant, invariant factors and parity.
    LatticeInfo {
        lattice: PathBuf,
    },
    /// Isometry check, real spinor norm and optional k-fixing check.
    Spinor {
        lattice: PathBuf,
        isometry: PathBuf,
        /// Vector file with the canonical class `k`.
        #[arg(long)]
        canonical: Option<PathBuf>,
    },
    /// The three complete-vanishing-lattice conditions.
    CvlCheck {
        lattice: PathBuf,
        /// Root-set file; omitted means all roots (definite lattices) or the
        /// roots within --height (indefinite ones).
        roots: Option<PathBuf>,
        /// Six-vertex pattern file; the bundled pattern when absent.
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, default_value_t = latmon::vanishing::DEFAULT_ORBIT_BOUND)]
        orbit_bound: usize,
        /// Node budget for the diagram search.
        #[arg(long)]
        tuple_bound: Option<u64>,
        /// Index of the root the orbit closure starts from.
        #[arg(long, default_value_t = 0)]
        seed: usize,
        #[arg(long, default_value_t = 3)]
        height: u64,
    },
    /// Surface model, fibre complement, witness searches, Milnor comparison
    /// and O'_k spot checks.
    Surface {
        pg: u64,
        multiplicities: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        height: u64,
        /// Largest number of nonzero coordinates in a search candidate.
        #[arg(long, default_value_t = 3)]
        max_support: usize,
        /// Write the model file (lattice plus named classes) here.
        #[arg(long)]
        model_out: Option<PathBuf>,
        /// Random seed for the O'_k spot checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        spot_checks: usize,
    },
    /// Milnor lattice of x^a + y^b + z^c on the Pham basis.
    Milnor {
        a: u64,
        b: u64,
        c: u64,
        /// Compare with L' of the model with this geometric genus; defaults
        /// to k − 1 for exponents (6k−1, 3, 2).
        #[arg(long)]
        compare_pg: Option<u64>,
        /// Write the lattice file here.
        #[arg(long)]
        lattice_out: Option<PathBuf>,
    },
    /// Orbit closure of one root under the reflections in a root set.
    Orbit {
        lattice: PathBuf,
        roots: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: usize,
        #[arg(long, default_value_t = latmon::vanishing::DEFAULT_ORBIT_BOUND)]
        orbit_bound: usize,
        /// Write the orbit as a root-set file here.
        #[arg(long)]
        roots_out: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let start = Instant::now();
    let report = match &cli.command {
        Command::LatticeInfo { lattice } => commands::lattice_info(lattice)?,
        Command::Spinor { lattice, isometry, canonical } => commands::spinor(lattice, isometry, canonical.as_deref())?,
        Command::CvlCheck { lattice, roots, pattern, orbit_bound, tuple_bound, seed, height } => {
            commands::cvl_check(lattice, roots.as_deref(), pattern.as_deref(), *orbit_bound, *tuple_bound, *seed, *height)?
        }
        Command::Surface { pg, multiplicities, height, max_support, model_out, seed, spot_checks } => commands::surface(
            *pg,
            multiplicities,
            latmon::SearchBounds { height: *height, max_support: *max_support },
            model_out.as_deref(),
            *seed,
            *spot_checks,
        )?,
        Command::Milnor { a, b, c, compare_pg, lattice_out } => commands::milnor([*a, *b, *c], *compare_pg, lattice_out.as_deref())?,
        Command::Orbit { lattice, roots, seed, orbit_bound, roots_out } => commands::orbit(lattice, roots, *seed, *orbit_bound, roots_out.as_deref())?,
    };
    Ok(report.finish(start.elapsed()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("ERROR=cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if !cli.quiet {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ERROR={e}");
            ExitCode::from(e.exit_code())
        }
    }
}
