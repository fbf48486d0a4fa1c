use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::config::text_or_number;

#[derive(Debug, Parser)]
#[command(name = "favard", version, about = "Projections, Favard length and tilings of product Cantor sets")]
pub struct Cli {
    /// TOML file with default values for any long flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact projection measure for a rational slope.
    Project(ProjectArgs),
    /// Favard length estimates for a range of levels, as CSV.
    Favard(FavardArgs),
    /// Direction analysis and exponents for a slope q/r, as JSON.
    Tiling(TilingArgs),
    /// Fourier transforms, band integrals and approximate zero sets.
    Spectral {
        #[command(subcommand)]
        command: SpectralCommand,
    },
    /// Membership in the sublevel set of max_n ∫F_n².
    XLambda(XLambdaArgs),
}

#[derive(Debug, Subcommand)]
pub enum SpectralCommand {
    /// ν̂^n(ξ).
    NuHat(PointArgs),
    /// F̂^n(ξ).
    FHat(PointArgs),
    /// χ(ξ), the transform of the unit indicator.
    Chi(ChiArgs),
    /// Sampled transform on a grid, as CSV.
    Spectrum(SpectrumArgs),
    /// Band integrals I, I₁ and the Z_δ-restricted I₂, as JSON.
    Integral(IntegralArgs),
    /// ∫|F̂^n|² against the exact ∫F_n², as JSON.
    Plancherel(PlancherelArgs),
    /// Approximate zero set and its lattice/root structure, as JSON.
    Zeros(ZerosArgs),
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct SystemArgs {
    /// Base K (default 4).
    #[arg(long = "K")]
    #[serde(rename = "K")]
    pub k: Option<u64>,
    /// Digits A, comma separated (default 0,3).
    #[arg(long = "A", value_delimiter = ',')]
    #[serde(rename = "A")]
    pub a: Option<Vec<u64>>,
    /// Digits B, comma separated (default 0,3).
    #[arg(long = "B", value_delimiter = ',')]
    #[serde(rename = "B")]
    pub b: Option<Vec<u64>>,
    /// Largest level-set or sample count allowed.
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowArg {
    Unit,
    Shadow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlacementArg {
    Theta,
    T,
    Farey,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformArg {
    NuHat,
    FHat,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ProjectArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    /// Level (default 1).
    #[arg(long)]
    pub n: Option<u32>,
    /// Slope t = q/r, e.g. 2/1, 0.5 or 3.
    #[arg(long)]
    #[serde(default, with = "text_or_number")]
    pub t: Option<String>,
    /// Window of the counting function (default unit).
    #[arg(long, value_enum)]
    pub window: Option<WindowArg>,
    /// Also emit the counting function.
    #[arg(long)]
    #[serde(default)]
    pub step_function: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct FavardArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    /// Last level (default 6).
    #[arg(long)]
    pub n_max: Option<u32>,
    /// First level (default min(1, n-max)).
    #[arg(long)]
    pub n_min: Option<u32>,
    /// Nodes per quarter-range, or the Farey order (default 256).
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long, value_enum)]
    pub placement: Option<PlacementArg>,
    /// Refinement levels, each halving the nodes (default 3).
    #[arg(long)]
    pub refinements: Option<u32>,
    /// Exponent p for the n^{-1/p} reference column.
    #[arg(long)]
    pub p: Option<f64>,
    /// Output CSV path (required).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct TilingArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    /// Levels probed for the measure trend (default 4).
    #[arg(long)]
    pub n_probe: Option<u32>,
    /// Largest modulus tried by the complement search (default 256).
    #[arg(long = "m-max")]
    #[serde(rename = "m-max")]
    pub m_max: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PointArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    /// Level (default 1).
    #[arg(long)]
    pub n: Option<u32>,
    /// Slope (default 0).
    #[arg(long)]
    #[serde(default, with = "text_or_number")]
    pub t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct ChiArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    #[serde(default, with = "text_or_number")]
    pub t: Option<String>,
    #[arg(long, value_enum)]
    pub transform: Option<TransformArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
    /// Grid step (default 0.02/(1+t)).
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct IntegralArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    /// Level N of the full measure (default n + m).
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    #[serde(default, with = "text_or_number")]
    pub t: Option<String>,
    #[arg(long)]
    pub step: Option<f64>,
    /// Threshold δ of the set Z_δ.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PlancherelArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    #[serde(default, with = "text_or_number")]
    pub t: Option<String>,
    /// Half-width of the frequency window (default 1000).
    #[arg(long)]
    pub xi_max: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ZerosArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Default (r+q)/(1+r+q).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Direction q/r (default 2/1).
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    /// Lattice modulus; derived from a tiling certificate when omitted.
    #[arg(long)]
    pub modulus: Option<u64>,
    #[arg(long)]
    pub step: Option<f64>,
    /// Boundary resolution (default 1e-6·K^m).
    #[arg(long)]
    pub resolution: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct XLambdaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    /// Largest level (default 3).
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: Option<u32>,
    #[arg(long)]
    #[serde(default, with = "text_or_number")]
    pub lambda: Option<String>,
    /// A single slope; otherwise a grid is used.
    #[arg(long)]
    #[serde(default, with = "text_or_number")]
    pub t: Option<String>,
    /// Farey grid order (default 8).
    #[arg(long)]
    pub farey_order: Option<u64>,
    /// Sample this many random rational slopes in [0, 1] instead.
    #[arg(long)]
    pub random_slopes: Option<usize>,
    /// Largest denominator of random slopes (default 16).
    #[arg(long)]
    pub max_denominator: Option<u64>,
    /// Seed of the random slopes (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub window: Option<WindowArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
