//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::payload::Format;

#[derive(Parser)]
#[command(
    name = "xpoint",
    version,
    about = "Splits measured action-vs-environment lines into utility and norm functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the payload (or chart) to this path instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Payload format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Doc)]
    pub format: FormatArg,

    /// Render aligned human-readable output instead of the machine payload
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Relative tolerance for unchanged-vs-changed classification
    #[arg(
        long,
        global = true,
        default_value_t = 1e-9,
        allow_negative_numbers = true
    )]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Doc,
    Table,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Doc => Format::Doc,
            FormatArg::Table => Format::Table,
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Fit the action-on-environment line from a delimited file
    Fit(FitArgs),
    /// Split a fitted line into utility and norm lines
    Decompose(DecomposeArgs),
    /// Crossing point of two explicit lines
    Xpoint(XpointArgs),
    /// Maximise the nonlinear value model via its first-order condition
    Argmax(ArgmaxArgs),
    /// Classify the change between two parameter sets against approaches I-IV
    Compare(CompareArgs),
    /// Compute the parameter change each approach needs to reach a target line
    Plan(PlanArgs),
    /// Generate a synthetic dataset from a known line
    Simulate(SimulateArgs),
    /// Run both bundled case studies end to end
    Reproduce,
    /// Emit chart data (or an SVG chart) for a decomposition
    Plot(PlotArgs),
}

#[derive(Args)]
pub struct FitArgs {
    /// Input file (UTF-8, header row)
    #[arg(long)]
    pub input: PathBuf,

    /// Header name of the environment column
    #[arg(long = "env-col")]
    pub env_col: String,

    /// Header name of the action column
    #[arg(long = "action-col")]
    pub action_col: String,

    /// Single-character field delimiter
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,

    /// Blend each environment value with the two preceding rows using these
    /// three weights (newest first), e.g. 2,1,1
    #[arg(long = "smooth-weights", value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub smooth_weights: Option<Vec<f64>>,
}

/// Where a decomposition comes from: a bundled case or explicit parameters.
#[derive(Args)]
pub struct SourceArgs {
    /// Bundled case id: power-before, power-after, co2-low, co2-high
    #[arg(long, conflicts_with_all = ["alpha", "beta", "eps_u0", "eps_n0"])]
    pub case: Option<String>,

    /// Fitted slope (action units per environment unit)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// Fitted intercept (action units)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,

    /// Environment at which the utility slope vanishes
    #[arg(long = "eps-u0", allow_negative_numbers = true)]
    pub eps_u0: Option<f64>,

    /// Environment at which the norm slope vanishes
    #[arg(long = "eps-n0", allow_negative_numbers = true)]
    pub eps_n0: Option<f64>,

    /// Value scale (default 1)
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
}

#[derive(Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    /// Environments to evaluate the line pair at (defaults to the case's
    /// reference environment when --case is given)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub eps: Vec<f64>,
}

#[derive(Args)]
pub struct XpointArgs {
    #[arg(long = "u-slope", allow_negative_numbers = true)]
    pub u_slope: f64,
    #[arg(long = "u-intercept", allow_negative_numbers = true)]
    pub u_intercept: f64,
    #[arg(long = "n-slope", allow_negative_numbers = true)]
    pub n_slope: f64,
    #[arg(long = "n-intercept", allow_negative_numbers = true)]
    pub n_intercept: f64,
}

#[derive(Args)]
pub struct ArgmaxArgs {
    /// Utility exponent, in (0, 1)
    #[arg(long)]
    pub ua: f64,

    /// Norm exponent, greater than 1
    #[arg(long)]
    pub nb: f64,

    /// Norm shift (peak offset along the action axis)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub na: f64,

    /// Norm offset (value-axis shift; never moves the maximiser)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub noff: f64,

    /// Action domain lower bound
    #[arg(long, default_value_t = 0.0)]
    pub lower: f64,

    /// Action domain upper bound
    #[arg(long, default_value_t = 10.0)]
    pub upper: f64,
}

#[derive(Args)]
pub struct CompareArgs {
    /// Before side: case id or alpha,beta,eps_u0,eps_n0[,lambda]
    pub before: String,

    /// After side: case id or alpha,beta,eps_u0,eps_n0[,lambda]
    pub after: String,

    /// Environment the lines are compared at (no default)
    #[arg(long = "eps-ref", allow_negative_numbers = true)]
    pub eps_ref: f64,
}

#[derive(Args)]
pub struct PlanArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    /// Target line slope
    #[arg(long = "alpha-target", allow_negative_numbers = true)]
    pub alpha_target: f64,

    /// Target line intercept
    #[arg(long = "beta-target", allow_negative_numbers = true)]
    pub beta_target: f64,

    /// Environment the plan is evaluated at (no default)
    #[arg(long = "eps-ref", allow_negative_numbers = true)]
    pub eps_ref: f64,

    /// Goal utility slope for an approach-I entry
    #[arg(long = "u-slope-target", allow_negative_numbers = true)]
    pub u_slope_target: Option<f64>,

    /// Goal norm slope for an approach-II entry
    #[arg(long = "n-slope-target", allow_negative_numbers = true)]
    pub n_slope_target: Option<f64>,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Line slope
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Line intercept
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,

    /// Ground-truth utility threshold (recorded, not used for generation)
    #[arg(long = "eps-u0", default_value_t = 0.0, allow_negative_numbers = true)]
    pub eps_u0: f64,

    /// Ground-truth norm threshold (recorded, not used for generation)
    #[arg(long = "eps-n0", default_value_t = 1.0, allow_negative_numbers = true)]
    pub eps_n0: f64,

    /// Ground-truth value scale
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,

    /// Environment grid as lo:hi:count
    #[arg(long)]
    pub grid: Option<String>,

    /// Explicit environment values
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub eps: Option<Vec<f64>>,

    /// Gaussian noise standard deviation
    #[arg(long = "noise-sd", default_value_t = 0.0)]
    pub noise_sd: f64,

    /// Generator seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output field delimiter
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
}

#[derive(Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    /// Environments to draw a line pair for
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub eps: Vec<f64>,

    /// Chart form: a numeric data table or a standalone SVG
    #[arg(long, value_enum, default_value_t = ChartArg::Table)]
    pub chart: ChartArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    Table,
    Svg,
}
