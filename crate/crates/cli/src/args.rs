use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rolle::SamplingScheme;

#[derive(Debug, Parser)]
#[command(
    name = "rolle",
    version,
    about = "Arrangements of zeros of real-rooted functions and their derivatives"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Stdout format. Result files are always JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the result document to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every admissible symbolic sequence of degree n.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Exact number of admissible symbolic sequences of degree n.
    Count {
        #[arg(long)]
        n: usize,
        /// Also enumerate (n <= 7) and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Sample real-rooted polynomials and tally their symbolic sequences.
    Classify(ClassifyArgs),
    /// Check a 6-tuple x1 x2 x3 y1 y2 z1 against the cubic inequalities.
    Check3 {
        #[arg(num_args = 6, value_names = ["X1", "X2", "X3", "Y1", "Y2", "Z1"], allow_negative_numbers = true, required = true)]
        tuple: Vec<f64>,
    },
    /// Build a 3-nice function realizing an admissible 6-tuple.
    Construct3(Construct3Args),
    /// Audit the quartic normal-form theorem on a grid or random points.
    Anderson(AndersonArgs),
    /// Sample product-form trigonometric polynomials and tally circular words.
    Trig(TrigArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_parser = parse_scheme, default_value = "gap-exponential")]
    pub scheme: SamplingScheme,
    #[arg(long, default_value_t = 1.0)]
    pub half_width: f64,
    /// Worker threads; does not affect the result.
    #[arg(long)]
    pub workers: Option<usize>,
}

fn parse_scheme(s: &str) -> Result<SamplingScheme, String> {
    s.parse().map_err(|e: rolle::SearchError| e.to_string())
}

#[derive(Debug, Args)]
pub struct Construct3Args {
    #[arg(num_args = 6, value_names = ["X1", "X2", "X3", "Y1", "Y2", "Z1"], allow_negative_numbers = true, required = true)]
    pub tuple: Vec<f64>,
    /// Spline document (JSON).
    #[arg(long)]
    pub spline_out: Option<PathBuf>,
    /// Curve table with columns x, f, df, d2f (CSV).
    #[arg(long)]
    pub curve_out: Option<PathBuf>,
    /// Rows in the curve table.
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u64).range(2..))]
    pub samples: u64,
    /// Initial fillet radius; defaults to 1e-2 of the smallest gap.
    #[arg(long)]
    pub radius: Option<f64>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["grid", "random"])))]
pub struct AndersonArgs {
    /// Grid density per axis.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub grid: Option<u64>,
    /// Number of uniform random points.
    #[arg(long, requires = "seed")]
    pub random: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
    pub u_min: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub u_max: f64,
    #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
    pub v_min: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub v_max: f64,
    /// Worker threads; does not affect the result.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TrigArgs {
    /// Degree, at most 3.
    #[arg(long)]
    pub n: usize,
    /// Number of derivative layers, at most 3.
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    /// Smallest cyclic gap between sampled zeros.
    #[arg(long, default_value_t = 0.01)]
    pub min_gap: f64,
}
