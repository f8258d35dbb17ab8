use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "casimir-film",
    version,
    about = "Casimir free energy and pressure of a metal film on a metal plate"
)]
pub struct Cli {
    /// TOML file with defaults for any flag (same names as the flags).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// More log output (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List built-in metals and attached optical tables.
    Materials(MaterialsArgs),
    /// Free energy and pressure at one or more thicknesses.
    Compute(ComputeArgs),
    /// Free energy and pressure over a thickness grid.
    Sweep(SweepArgs),
    /// Thickness where the free energy changes sign.
    SignChange(SignChangeArgs),
    /// Interior extremum of the free energy.
    Extremum(RangeCommandArgs),
    /// Smallest thickness where the free energy is classical.
    Onset(OnsetArgs),
    /// Drude/plasma and simple/data free-energy ratios.
    Ratios(RatiosArgs),
    /// Compare against published values, one CHECK line each.
    Check(CheckArgs),
    /// Write a Drude-generated optical table (synthetic test data).
    SynthTable(SynthArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Attach an optical table to a metal, NAME=PATH. Repeatable.
    #[arg(long = "data", value_name = "NAME=PATH")]
    pub data: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Film metal (Au, Ag, Cu, Al).
    #[arg(long)]
    pub film: Option<String>,

    /// Plate metal (Au, Ag, Cu, Al).
    #[arg(long)]
    pub plate: Option<String>,

    /// Comma-separated list of simple-drude, simple-plasma, data-drude, data-plasma.
    #[arg(long)]
    pub variant: Option<String>,

    /// Optical table for the film metal.
    #[arg(long, value_name = "PATH")]
    pub film_data: Option<PathBuf>,

    /// Optical table for the plate metal.
    #[arg(long, value_name = "PATH")]
    pub plate_data: Option<PathBuf>,

    #[command(flatten)]
    pub data: DataArgs,

    /// Temperature [K], default 300.
    #[arg(long)]
    pub temperature: Option<f64>,

    /// Allow films thinner than 10 nm.
    #[arg(long)]
    pub allow_thin: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write output here instead of stdout.
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Also write an SVG plot of |F| and P against thickness.
    #[arg(long)]
    pub emit_plot: bool,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    /// Lower thickness [nm].
    #[arg(long)]
    pub a_min: Option<f64>,

    /// Upper thickness [nm].
    #[arg(long)]
    pub a_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MaterialsArgs {
    #[arg(long)]
    pub json: bool,

    #[command(flatten)]
    pub data: DataArgs,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Thickness [nm]; comma-separated for several.
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<f64>,

    /// Write output here instead of stdout.
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    #[command(flatten)]
    pub range: RangeArgs,

    /// Number of thicknesses, default 19.
    #[arg(long)]
    pub n_points: Option<usize>,

    /// linear or log, default linear.
    #[arg(long)]
    pub spacing: Option<String>,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SignChangeArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    #[command(flatten)]
    pub range: RangeArgs,

    /// Final bracket width [nm], default 0.01.
    #[arg(long)]
    pub tol: Option<f64>,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RangeCommandArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    #[command(flatten)]
    pub range: RangeArgs,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OnsetArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    #[command(flatten)]
    pub range: RangeArgs,

    /// Allowed |F/F_classical - 1|, default 0.01.
    #[arg(long)]
    pub threshold: Option<f64>,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RatiosArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Thicknesses [nm], comma-separated, default 50,100.
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<f64>,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub data: DataArgs,

    /// Temperature [K], default 300.
    #[arg(long)]
    pub temperature: Option<f64>,

    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Metal whose Drude parameters generate the table.
    #[arg(long)]
    pub material: String,

    /// Lowest photon energy [eV].
    #[arg(long, default_value_t = 0.125)]
    pub e_min: f64,

    /// Highest photon energy [eV].
    #[arg(long, default_value_t = 1e4)]
    pub e_max: f64,

    #[arg(long, default_value_t = 400)]
    pub rows: usize,

    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}
