use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "fe-lab", version, about = "Finite embeddability of subsets of the naturals")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every command and recorded in every report.
#[derive(Debug, Args, Serialize)]
pub struct Flags {
    /// Search horizon for generator-backed sets.
    #[arg(long, global = true, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub horizon: u64,
    /// Largest prefix length for bounded embedding searches.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub nmax: u64,
    /// Largest shift for bounded embedding searches.
    #[arg(long, global = true, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub kmax: u64,
    /// Default index cap for chain bases written without one.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub indexcap: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub count: u64,
    /// Emit the JSON envelope (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV rows instead of JSON where the command has a tabular result.
    #[arg(long, global = true)]
    pub csv: bool,
    /// File of `name = expr` definitions added to the built-in corpus.
    #[arg(long, global = true, env = "FE_LAB_CORPUS")]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide or semi-decide `A ≤fe B`.
    Check { a: String, b: String },
    /// Thick, syndetic and piecewise syndetic verdicts.
    Classify {
        s: String,
        /// Gap bound for piecewise syndeticity.
        #[arg(long, default_value_t = 1)]
        gap: u64,
    },
    /// Natural and upper Banach density.
    Density {
        s: String,
        #[arg(long, value_enum, default_value_t = Samples::Windows)]
        samples: Samples,
        /// Largest exponent for `--samples peaks`.
        #[arg(long, default_value_t = 20)]
        mmax: u32,
        /// Window lengths for Banach density samples.
        #[arg(long, value_delimiter = ',', default_values_t = [16, 256, 4096])]
        windows: Vec<u64>,
    },
    /// Build the set `B′ ⊆ B` with spaced prefix witnesses.
    Bprime {
        a: String,
        b: String,
        #[arg(long, default_value_t = 1 << 20)]
        kcap: u64,
    },
    /// Filter queries on bases `base{...}`, `tails(expr[, cap])`, `shiftsdown(expr[, cap])`.
    Filter {
        #[command(subcommand)]
        op: FilterOp,
    },
    /// Randomized transfer checks on embeddable pairs.
    Suite {
        #[arg(long, default_value_t = 16)]
        maxt: usize,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        maxp: u64,
        /// Include every generated pair and its checks.
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Samples {
    /// Counts at the requested window lengths.
    Windows,
    /// Counts at `2^m + m` for `m = 2..=mmax`.
    Peaks,
}

#[derive(Debug, Subcommand)]
pub enum FilterOp {
    /// Whether `X` belongs to the filter.
    Member { base: String, x: String },
    /// Whether `X` belongs to `U ⊕ V`.
    Sum { x: String, u: String, v: String },
    /// Whether `B` is `U`-rich.
    Rich { u: String, b: String },
    /// `U ≤fe V` between generated filters.
    Fe { u: String, v: String },
    /// Whether each `B` contains a translate of a member of `V`.
    Leftsum {
        v: String,
        #[arg(required = true)]
        sets: Vec<String>,
    },
    /// Richness of the colour classes of `B`.
    Regularity {
        u: String,
        b: String,
        /// `residue:M` or `blocks:LEN:COLORS`.
        #[arg(long, default_value = "residue:2")]
        coloring: String,
    },
}
