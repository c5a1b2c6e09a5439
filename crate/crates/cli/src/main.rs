//! `minvol`: analyze lattice polytopes, build and check triangulation
//! certificates, decide regularity, and run surveys.
//!
//! Exit codes: 0 success, 1 mathematical violation, 2 input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "minvol", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct PointSet {
    /// Use the file's points as the configuration instead of all lattice points.
    #[arg(long)]
    config_points: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print lattice counts, volume, bound and Castelnuovo status.
    Analyze {
        file: PathBuf,
        /// Also build the triangulation and report its size and unimodularity.
        #[arg(long)]
        build: bool,
        /// Also decide regularity of the built triangulation (implies --build).
        #[arg(long)]
        regular: bool,
    },
    /// Build the triangulation and write its certificate to OUT.
    Triangulate {
        file: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        points: PointSet,
    },
    /// Check a certificate against a polytope file.
    Verify {
        file: PathBuf,
        cert: PathBuf,
        #[command(flatten)]
        points: PointSet,
    },
    /// Print lifting heights for a certificate, or NOT REGULAR.
    Regular {
        file: PathBuf,
        cert: PathBuf,
        #[command(flatten)]
        points: PointSet,
    },
    /// Survey random or exhaustively enumerated lattice polytopes.
    Search(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Coordinates range over [0, BOX].
    #[arg(long = "box", default_value_t = 3)]
    box_size: i64,
    /// Number of draws.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate (d+1)-subsets of the box in order instead of drawing at random.
    #[arg(long)]
    exhaustive: bool,
    /// Largest configuration checked for regularity; 0 disables the check.
    #[arg(long, default_value_t = 25)]
    regularity_cap: usize,
    /// Keep polytopes without interior lattice points.
    #[arg(long)]
    allow_empty: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            file,
            build,
            regular,
        } => commands::analyze(&file, build || regular, regular),
        Command::Triangulate { file, out, points } => {
            commands::triangulate(&file, &out, points.config_points)
        }
        Command::Verify { file, cert, points } => {
            commands::verify(&file, &cert, points.config_points)
        }
        Command::Regular { file, cert, points } => {
            commands::regular(&file, &cert, points.config_points)
        }
        Command::Search(a) => {
            let mut params =
                minvol::search::SearchParams::new(a.dim, a.box_size, a.samples, a.seed);
            params.exhaustive = a.exhaustive;
            params.regularity_cap = (a.regularity_cap > 0).then_some(a.regularity_cap);
            params.require_interior = !a.allow_empty;
            commands::search(&params)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
