//! `immclass`: classification of immersions of closed oriented 3-manifolds into ℝ⁵.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use input::Source;
use render::Format;

#[derive(Parser, Debug)]
#[command(name = "immclass", version, about = "Regular-homotopy classification of immersions M^3 -> R^5")]
struct Cli {
    /// Output format; both report the same numbers.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the input is a closed, connected, coherently oriented 3-manifold.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Homology and cohomology groups, α(M) and the Poincaré duality check.
    Homology {
        #[command(flatten)]
        source: Source,
        /// Coefficient ring.
        #[arg(long, value_enum, default_value = "z")]
        coefficients: Ring,
    },
    /// Immersion classes: one fiber Z_{4d(c)} per Wu class c, and the per-χ breakdown.
    Classify {
        #[command(flatten)]
        source: Source,
        /// Free coordinates of swept classes range over [-window, window].
        #[arg(long, default_value_t = 2)]
        window: u32,
    },
    /// Wu classes Γ₂(χ) and fiber Z_{2d(χ)} for one normal Euler class χ.
    ClassifyChi {
        #[command(flatten)]
        source: Source,
        /// χ in the emitted H² basis, comma separated.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "cochain", required_unless_present = "cochain")]
        chi: Option<String>,
        /// χ as a 2-cocycle on the cells, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        cochain: Option<String>,
    },
    /// Homotopy classes of maps to S²: one fiber Z_{2d(χ)} per χ ∈ H².
    S2 {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        window: u32,
    },
    /// Checks that the index of 2χ ∪ H¹ in H³ equals 2d(χ) for every χ in a window.
    DualitySweep {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Connected sum of two immersion classes given as NAME:c1,c2,...:i.
    Consum {
        /// Left summand, e.g. "T3:1,0,0:5" (NAME may be a builtin or a file).
        left: String,
        /// Right summand, e.g. "S3::4" for the sphere class with label 4.
        right: String,
    },
    /// Invariants computed from census data (signatures, cusps, rotations).
    Ledger {
        #[command(subcommand)]
        command: LedgerCommand,
    },
    /// Write a builtin in the input file format it would be read from.
    Export {
        #[arg(long)]
        builtin: String,
        /// Write a JSON chain presentation even for triangulated builtins.
        #[arg(long)]
        presentation: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Ring {
    Z,
    Z2,
}

/// Seifert data from flags or from a census entry.
#[derive(clap::Args, Debug, Clone)]
pub struct SeifertArgs {
    /// Census JSON file; used with --label instead of the numeric flags.
    #[arg(long, requires = "label")]
    pub census: Option<PathBuf>,
    #[arg(long)]
    pub label: Option<String>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "census")]
    pub sigma: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "census")]
    pub cusps: Option<BigInt>,
    #[arg(long, default_value = "0")]
    pub alpha: BigInt,
    #[arg(long, default_value = "0")]
    pub d: BigInt,
    /// R(F) in Z_{4d}.
    #[arg(long = "R", allow_hyphen_values = true)]
    pub big_r: Option<BigInt>,
    /// r(F) in Z_{2d}.
    #[arg(long = "r", allow_hyphen_values = true)]
    pub r: Option<BigInt>,
}

#[derive(Subcommand, Debug)]
pub enum LedgerCommand {
    /// (3σ + cusps)/2; fails when 3σ + cusps is odd.
    Smale {
        #[arg(long, allow_hyphen_values = true)]
        sigma: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        cusps: BigInt,
    },
    /// (3(σ − α) + cusps)/2 for trivial normal bundle; fails on odd numerator.
    Takase {
        #[arg(long, allow_hyphen_values = true)]
        sigma: BigInt,
        #[arg(long, default_value = "0")]
        alpha: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        cusps: BigInt,
    },
    /// I = 3σ − 3α + cusps + R in Z_{4d}, with its half i in Z_{2d}.
    #[command(name = "I")]
    BigI {
        #[command(flatten)]
        data: SeifertArgs,
    },
    /// j = 3σ − 3α + cusps + r in Z_{2d}, cross-checked against 2i.
    #[command(name = "j")]
    J {
        #[command(flatten)]
        data: SeifertArgs,
    },
    /// Whether two census entries can bound the same immersion.
    Consistency {
        #[arg(long)]
        census: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Whether a framed-curve record's R, r, r₂ are compatible reductions.
    Lift {
        #[arg(long)]
        census: PathBuf,
        #[arg(long)]
        label: String,
    },
    /// Rotation difference r_left − r_right in Z_{2d}.
    Rd {
        #[arg(long)]
        census: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(outcome) => {
            match outcome {
                commands::Outcome::Value { value, ok } => {
                    print!("{}", render::emit(&value, cli.format));
                    if !ok {
                        return ExitCode::FAILURE;
                    }
                }
                commands::Outcome::Raw(text) => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
