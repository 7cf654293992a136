use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use systolic_core::holonomy::DEFAULT_BUDGET;
use systolic_core::surface_models::CHAIN_CUFF_DEFAULT;

#[derive(Debug, Parser)]
#[command(
    name = "systolic-atlas",
    version,
    about = "Systoles, length spectra and distance bounds for explicit hyperbolic surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the trivalent tree behind the tree surface.
    Tree(TreeArgs),
    /// Enumerate closed geodesics below a cutoff and report the systole.
    Systole(SystoleArgs),
    /// Evaluate one family of distance bounds over a range of genera.
    Bounds(BoundsArgs),
    /// Tabulate the large-genus thresholds on a log-scale grid of log g.
    Thresholds(ThresholdArgs),
    /// Crossover genera and leading coefficients.
    Constants(ConstantsArgs),
    /// Plot the dilatation of the twist map across the collar strip.
    PlotDilatation(PlotArgs),
    /// Regenerate the rotation family reference values.
    Golden(GoldenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    /// Depth of the three joined binary trees.
    #[arg(long, conflicts_with = "genus", required_unless_present = "genus")]
    pub n: Option<usize>,
    /// Number of leaves, which is the genus of the surface.
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Tree,
    Rot,
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RotParam {
    C1,
    C2,
}

#[derive(Debug, Args)]
pub struct SystoleArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub genus: usize,
    /// Length cutoff. Defaults to c + 0.1 for the rotation family.
    #[arg(long)]
    pub cutoff: Option<f64>,
    /// Named point of the rotation family.
    #[arg(long, value_enum, conflicts_with_all = ["c", "t"])]
    pub param: Option<RotParam>,
    /// Cuff length of the rotation family.
    #[arg(long)]
    pub c: Option<f64>,
    /// Twist of the rotation family.
    #[arg(long)]
    pub t: Option<f64>,
    /// Cuff length of the chain surface.
    #[arg(long, default_value_t = CHAIN_CUFF_DEFAULT)]
    pub cuff: f64,
    /// Maximum number of developed polygons.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Hole,
    Small,
    Large,
    Wp,
    Teich,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    /// Inclusive range `a..b`.
    #[arg(long)]
    pub genus_range: String,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Constant of the systole tail estimate; there is no default.
    #[arg(long = "mp-B")]
    pub mp_b: Option<f64>,
    #[arg(long, default_value_t = CHAIN_CUFF_DEFAULT)]
    pub cuff: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long, default_value_t = 100.0)]
    pub log_g_min: f64,
    #[arg(long, default_value_t = 1e6)]
    pub log_g_max: f64,
    #[arg(long, default_value_t = 13)]
    pub points: usize,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long = "mp-B")]
    pub mp_b: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// Largest genus scanned for the diameter crossovers.
    #[arg(long, default_value_t = 1000)]
    pub max_genus: usize,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = CHAIN_CUFF_DEFAULT)]
    pub cuff: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub genus: usize,
    /// SVG path; the samples go next to it with a `.csv` extension.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    /// Use this twist instead of the solved one.
    #[arg(long)]
    pub t2: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GoldenArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub max_genus: usize,
}
