use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "vitalfew",
    version,
    about = "Cause and effect concentration for Gaussian and Pareto models of the 80/20 rule"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format. Defaults to the extension of --out, else text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Significant digits for every printed number.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,

    /// Seed for Monte-Carlo sampling.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate I_cause and I_effect at one threshold.
    Point(PointArgs),
    /// Fit the Gaussian shape ratio sigma/mu through a (cause, effect) point.
    FitRatio(FitArgs),
    /// Fit the Pareto index through a (cause, effect) point.
    FitAlpha(FitAlphaArgs),
    /// Named rules ("effect/cause") of a Gaussian model.
    Table(TableArgs),
    /// Sample curves of the Gaussian or Pareto model.
    Curve(CurveArgs),
    /// Sample the density f(x) and the moment integrand x f(x).
    Profile(ProfileArgs),
    /// Gaussian and Pareto curves over the same cause-share span.
    Compare(CompareArgs),
    /// Compare the closed forms with a seeded Monte-Carlo sample.
    McCheck(McCheckArgs),
}

/// A Gaussian model given by its ratio or by its mean and deviation.
#[derive(Debug, Clone, Args)]
pub struct GaussianModel {
    /// Shape ratio sigma/mu.
    #[arg(long, conflicts_with_all = ["mu", "sigma"], allow_hyphen_values = true)]
    pub ratio: Option<f64>,

    /// Mean of the cause distribution (with --sigma).
    #[arg(long, requires = "sigma", allow_hyphen_values = true)]
    pub mu: Option<f64>,

    /// Standard deviation of the cause distribution (with --mu).
    #[arg(long, requires = "mu", allow_hyphen_values = true)]
    pub sigma: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub gaussian: GaussianModel,

    /// Normalized threshold t = X/sigma.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,

    /// Absolute threshold deviation X (needs --mu and --sigma).
    #[arg(long = "X", allow_hyphen_values = true)]
    pub x: Option<f64>,

    /// Pareto index alpha.
    #[arg(long, conflicts_with_all = ["ratio", "mu", "sigma", "t", "x"], allow_hyphen_values = true)]
    pub alpha: Option<f64>,

    /// Pareto threshold A.
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<f64>,

    /// Pareto scale x_min.
    #[arg(long = "x-min", default_value_t = 1.0, allow_hyphen_values = true)]
    pub x_min: f64,

    /// Threshold given as the cause share it leaves above it.
    #[arg(long = "i-cause", allow_hyphen_values = true)]
    pub i_cause: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long = "i-cause", allow_hyphen_values = true)]
    pub i_cause: f64,

    #[arg(long = "i-effect", allow_hyphen_values = true)]
    pub i_effect: f64,
}

#[derive(Debug, Args)]
pub struct FitAlphaArgs {
    #[command(flatten)]
    pub point: FitArgs,

    /// Also list the iterated rules (c^n, e^n) for n = 1..=N.
    #[arg(long, value_name = "N")]
    pub iterate: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub gaussian: GaussianModel,

    /// Normalized thresholds; defaults to 1.7,1.3,1.1,0.67.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["x", "i_cause"])]
    pub t: Vec<f64>,

    /// Absolute threshold deviations (needs --mu and --sigma).
    #[arg(long = "X", value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "i_cause")]
    pub x: Vec<f64>,

    /// Cause-share targets.
    #[arg(long = "i-cause", value_delimiter = ',', allow_hyphen_values = true)]
    pub i_cause: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Gaussian,
    Pareto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum View {
    /// Effect share against cause share.
    EffectVsCause,
    /// Both shares against the threshold.
    Threshold,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum, default_value_t = Model::Gaussian)]
    pub model: Model,

    /// Gaussian ratios sigma/mu; defaults to 0.25,0.5,1,2,4.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub ratios: Vec<f64>,

    #[arg(long = "t-min", allow_hyphen_values = true)]
    pub t_min: Option<f64>,

    #[arg(long = "t-max", allow_hyphen_values = true)]
    pub t_max: Option<f64>,

    /// Pareto index; defaults to log4(5).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,

    /// Largest A/x_min of the Pareto sweep.
    #[arg(long = "ratio-max", default_value_t = 1e4, allow_hyphen_values = true)]
    pub ratio_max: f64,

    #[arg(long)]
    pub steps: Option<usize>,

    /// Plot layout for SVG output.
    #[arg(long, value_enum, default_value_t = View::EffectVsCause)]
    pub view: View,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: f64,

    #[arg(long, allow_hyphen_values = true)]
    pub sigma: f64,

    /// Left end of the x range; defaults to mu - 5 sigma.
    #[arg(long = "x-min", allow_hyphen_values = true)]
    pub x_min: Option<f64>,

    /// Right end of the x range; defaults to mu + 5 sigma.
    #[arg(long = "x-max", allow_hyphen_values = true)]
    pub x_max: Option<f64>,

    #[arg(long, default_value_t = 501)]
    pub steps: usize,

    /// Shade the tail at or above mu + t sigma.
    #[arg(long = "shade-t", allow_hyphen_values = true)]
    pub shade_t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub ratio: f64,

    /// Pareto index; defaults to log4(5).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,

    #[arg(long, default_value_t = vitalfew::curves::COMPARISON_STEPS)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct McCheckArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub ratio: f64,

    #[arg(long, allow_hyphen_values = true, conflicts_with = "i_cause")]
    pub t: Option<f64>,

    #[arg(long = "i-cause", allow_hyphen_values = true)]
    pub i_cause: Option<f64>,

    /// Sample count.
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,

    /// Width of the acceptance band in standard errors.
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pub sigmas: f64,
}
