use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "multdep", version, about = "Counts and checks for multiplicatively dependent tuples of bounded height")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Output path for the CSV table; a JSON summary and plot data are written next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximum number of dependence tests for one run.
    #[arg(long, global = true, default_value_t = 1e9)]
    pub budget: f64,
    /// Working precision of certified constants, in bits.
    #[arg(long, global = true, default_value_t = 128)]
    pub precision: u32,
    /// Worker threads; never changes any numeric output.
    #[arg(long, global = true, default_value_t = 1)]
    pub shards: usize,
    /// Seed for sampled output only.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModeArg {
    Integers,
    Numbers,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Setting {
    /// `Q`, `Q(i)` or `Q(sqrt(m))`.
    #[arg(long, conflicts_with = "degree")]
    pub field: Option<String>,
    /// Degree of the algebraic numbers (instead of a field).
    #[arg(long)]
    pub degree: Option<u32>,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Command {
    /// List the numbers of bounded height in a field or of a given degree.
    Enumerate {
        #[command(flatten)]
        setting: Setting,
        #[arg(long, value_enum, default_value = "integers")]
        mode: ModeArg,
        /// Height bound (a single value; rationals such as 3/2 allowed).
        #[arg(long)]
        heights: String,
        /// Emit only a seeded random sample of this size.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Rank-stratified counts of dependent tuples.
    Count {
        #[command(flatten)]
        setting: Setting,
        #[arg(long, value_enum, default_value = "integers")]
        mode: ModeArg,
        #[arg(long)]
        n: u32,
        /// Comma-separated height bounds.
        #[arg(long)]
        heights: String,
    },
    /// Leading constants for a field, or for a degree with `--degree`.
    Constants {
        #[command(flatten)]
        setting: Setting,
        /// JSON file with `{d, r1, r2, disc, h, reg, w, zeta2}`.
        #[arg(long, conflicts_with_all = ["field", "degree"])]
        field_file: Option<PathBuf>,
        /// Tuple lengths, comma separated.
        #[arg(long, default_value = "2,3,4,5,6")]
        n: String,
    },
    /// Exact count of y-smooth numbers up to x, next to the exp(Z) estimate.
    Psi {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
    },
    /// Solutions of a_1...a_k = b_1...b_k with coordinates coprime to q.
    ProductCount {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: u64,
        /// Comma-separated values of T.
        #[arg(long = "T")]
        t: String,
        /// Exponents gamma_i, comma separated (default all 1).
        #[arg(long)]
        gammas: Option<String>,
    },
    /// Census of the explicit rank n-1 construction.
    Lowerbound {
        #[arg(long)]
        n: usize,
        /// Comma-separated height bounds.
        #[arg(long, alias = "heights")]
        height: String,
        /// Odd primes p_2, q_2, p_3, q_3, ... (alternating sides).
        #[arg(long)]
        primes: Option<String>,
        /// Also list the generated tuples for the first height.
        #[arg(long)]
        list: bool,
    },
    /// Dependence certificate and rank of one tuple.
    VerifyTuple {
        /// Rationals such as `-3/4`, or `[c0,c1,...]#i` for root `i` of a polynomial.
        #[arg(required = true, allow_hyphen_values = true)]
        values: Vec<String>,
        /// Exponent bound for tuples outside the exact backends.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Counts of the exceptional polynomial sets for degree d.
    SpecialSets {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        heights: String,
    },
    /// Numbers with fixed leading and constant coefficients of the minimal polynomial.
    FixedCoeffs {
        #[arg(long)]
        field: String,
        #[arg(long)]
        u: u64,
        #[arg(long, allow_hyphen_values = true)]
        v: i64,
        #[arg(long)]
        heights: String,
    },
}
