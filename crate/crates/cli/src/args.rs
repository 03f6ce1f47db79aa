use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hyrobin",
    version,
    about = "Robin eigenvalues on exteriors of hyperbolic disks and convex-domain comparison checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand. Each one overrides the config-file key of the same
/// name (with `-` replaced by `_`).
#[derive(Debug, Args, Default)]
pub struct GlobalArgs {
    /// Flat `key = value` config file
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Truncation length T of the radial oracle
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub truncation: Option<f64>,

    /// Number of grid cells N of the radial oracle
    #[arg(long, global = true)]
    pub grid_points: Option<usize>,

    /// Geometric grading ratio of adjacent cells near t = 0
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub grading: Option<f64>,

    /// Condition at the truncation point
    #[arg(long, global = true)]
    pub far_bc: Option<FarBc>,

    /// Smallest disk radius accepted by the closed-form solver
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub min_radius: Option<f64>,

    /// Absolute slack for oracle-derived inequalities
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub oracle_tolerance: Option<f64>,

    /// Absolute slack for closed-form comparisons
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub closed_form_tolerance: Option<f64>,

    /// Oracle-vs-closed-form agreement, relative to max(1, |λ|)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub equivalence_tolerance: Option<f64>,

    /// Largest accepted gap above ¼ at the final truncation
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub essential_gap: Option<f64>,

    /// Significant digits of emitted floats
    #[arg(long, global = true)]
    pub precision: Option<usize>,

    /// Output format where both are supported (sweep)
    #[arg(long, global = true)]
    pub format: Option<Format>,

    /// Write the artifact here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FarBc {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Monotonicity,
    MainTheorem,
    Corollaries,
    AlphaStarBounds,
    EssentialBottom,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest spectral point for one (α, R)
    #[command(allow_negative_numbers = true)]
    DiskEigen {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        radius: Option<f64>,
    },

    /// Critical parameter α⋆(R) and the published upper bound
    #[command(allow_negative_numbers = true)]
    AlphaStar {
        #[arg(long)]
        radius: Option<f64>,
    },

    /// Lowest spectral point over an α × R grid
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alphas: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        radii: Option<Vec<f64>>,
    },

    /// Radial oracle against the closed form on an α × R grid
    #[command(allow_negative_numbers = true)]
    OracleCompare {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alphas: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        radii: Option<Vec<f64>>,
    },

    /// Weighted Poincaré minima at the lemma thresholds
    #[command(allow_negative_numbers = true)]
    PoincareCheck {
        #[arg(long = "b", value_delimiter = ',')]
        b: Option<Vec<f64>>,
    },

    /// Run verification suites and emit a JSON report
    Verify {
        #[arg(long)]
        suite: Option<Suite>,
    },

    /// Disk, parallel-set and comparison-disk queries
    #[command(subcommand)]
    Geometry(GeometryQuery),
}

#[derive(Debug, Subcommand)]
pub enum GeometryQuery {
    /// Area and perimeter of the disk of radius R
    Disk {
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Perimeter of the parallel set at distance t
    Parallel {
        #[arg(long)]
        perimeter: Option<f64>,
        #[arg(long)]
        area: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
    },
    /// Averaged curvature, matching radius and comparison disks
    Comparison {
        #[arg(long)]
        perimeter: Option<f64>,
        #[arg(long)]
        area: Option<f64>,
    },
}
