use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zetadiv::SeriesPolicy;

#[derive(Parser, Debug)]
#[command(name = "zetadiv", version, about = "Divergences between zeta and Pareto distributions")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Riemann or Hurwitz zeta value, optionally in exact form.
    Zeta(ZetaArgs),
    /// A divergence between two members of one family.
    Divergence(DivergenceArgs),
    /// Maximum-likelihood fit from a file of observations.
    Fit(FitArgs),
    /// CSV of the cumulant over a grid of natural parameters.
    PlotCumulant(PlotArgs),
    /// Zeta and Pareto quantities side by side.
    Table(TableArgs),
    /// Recompute the published worked examples.
    Verify(VerifyArgs),
    /// Draw a seeded sample, one observation per line.
    Sample(SampleArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PolicyArgs {
    /// Target relative truncation error.
    #[arg(long, default_value_t = 1e-12)]
    pub policy_rel_error: f64,
    /// Cap on series terms.
    #[arg(long, default_value_t = 1_000_000)]
    pub policy_max_terms: usize,
    /// Initial Euler–Maclaurin cutoff N.
    #[arg(long, default_value_t = 20)]
    pub policy_em_cutoff: usize,
    /// Euler–Maclaurin correction order M.
    #[arg(long, default_value_t = 10)]
    pub policy_em_order: usize,
    /// Truncate log-weighted, entropy and von Mangoldt series at exactly
    /// this many terms.
    #[arg(long)]
    pub policy_literal_terms: Option<usize>,
}

impl PolicyArgs {
    pub fn policy(&self) -> SeriesPolicy {
        SeriesPolicy {
            target_rel_error: self.policy_rel_error,
            max_terms: self.policy_max_terms,
            euler_maclaurin_cutoff: self.policy_em_cutoff,
            euler_maclaurin_order: self.policy_em_order,
            literal_terms: self.policy_literal_terms,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Zeta,
    Pareto,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// Print the exact rational multiple of a power of pi (even integer s).
    #[arg(long)]
    pub exact_even: bool,
    /// Hurwitz offset k0.
    #[arg(long)]
    pub hurwitz_k0: Option<u64>,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Alpha,
    Hellinger2,
    SharmaMittal,
    Renyi,
    Tsallis,
    Kl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KlMethodArg {
    LogSeries,
    Entropy,
    Mangoldt,
    FenchelYoung,
    Epsilon,
}

#[derive(Args, Debug)]
pub struct DivergenceArgs {
    #[arg(value_enum)]
    pub kind: KindArg,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Support offset for the zeta family.
    #[arg(long)]
    pub k0: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub s2: f64,
    /// Order α; for `kl --kl-method epsilon`, the weight on s1.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = KlMethodArg::LogSeries)]
    pub kl_method: KlMethodArg,
    /// For `kl --kl-method epsilon`: weight 1 - ε on s1.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    /// Also run the brute-force oracle and fail on disagreement.
    #[arg(long)]
    pub oracle: bool,
    /// Terms (zeta) or quadrature panels (Pareto) for the oracle.
    #[arg(long, default_value_t = 100_000)]
    pub oracle_terms: usize,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub k0: Option<u64>,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Zeta)]
    pub family: FamilyArg,
    #[arg(long)]
    pub k0: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    /// Destination file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, default_value_t = 4.0)]
    pub s1: f64,
    #[arg(long, default_value_t = 12.0)]
    pub s2: f64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run a single item.
    #[arg(long)]
    pub item: Option<String>,
    /// Shift the oracle of one item, to check that failures are detected.
    #[arg(long, hide = true)]
    pub perturb: Option<String>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub s: f64,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
