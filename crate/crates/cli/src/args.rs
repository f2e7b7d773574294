use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "intensity",
    version,
    about = "Metric distortion with preference intensities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Worst-case distortion of one or every alternative.
    #[command(visible_alias = "distort")]
    Distortion(DistortionArgs),
    /// Intensity-aware or intensity-oblivious optimal alternative.
    Opt(OptArgs),
    /// Price of ignoring intensities.
    Poii(PoiiArgs),
    /// Run a voting rule.
    Rule(RuleArgs),
    /// The scoring-vector game.
    Game(GameArgs),
    /// Lower-bound constructions.
    Instance(InstanceArgs),
    /// CSV data for the bound plots.
    Sweep(SweepArgs),
    /// Max-min line distortion over all electorates of a given size.
    Conjecture(ConjectureArgs),
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Profile file.
    #[arg(long)]
    pub profile: PathBuf,
    /// Overrides the file's `alpha:` line (`p/q` or decimal).
    #[arg(long)]
    pub alpha: Option<String>,
    /// Overrides the file's `mode:` line.
    #[arg(long)]
    pub mode: Option<String>,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Print decimals with this many digits instead of exact fractions.
    #[arg(long)]
    pub decimal: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistortionArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Only this alternative.
    #[arg(long)]
    pub alt: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OptKind {
    Aware,
    Oblivious,
}

#[derive(Debug, Args)]
pub struct OptArgs {
    pub kind: OptKind,
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Cap on enumerated flag assignments.
    #[arg(long)]
    pub budget: Option<u128>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PoiiArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long)]
    pub budget: Option<u128>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RuleKind {
    Psm,
    General,
    Robust,
    Tal,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    pub rule: RuleKind,
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Moderation level for `psm` (scores `r^k`).
    #[arg(long)]
    pub k: Option<usize>,
    /// Intensity-rank cutoff for `robust`.
    #[arg(long)]
    pub ell: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GameKind {
    Recurrence,
    Matrix,
    Verify,
}

#[derive(Debug, Args)]
pub struct GameArgs {
    pub action: GameKind,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub alpha: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InstanceAction {
    Generate,
    Verify,
    Dump,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    pub action: InstanceAction,
    /// general-reversed, general-intense, line-two-alt-mild, line-two-alt-intense,
    /// line-general, polar, poii-mandatory or poii-voluntary.
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub budget: Option<u128>,
    /// Directory for `dump`; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SweepKind {
    /// General lower bounds against alpha.
    Bounds,
    /// Upper bound `2 + max(alpha, t_ell)`.
    Upper,
    /// Line lower bounds.
    Line,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub kind: SweepKind,
    /// Number of alternatives; `line` also takes a comma list.
    #[arg(long, default_value = "10")]
    pub m: String,
    /// `start:stop:step` or a comma list; defaults to steps of 1/100.
    #[arg(long)]
    pub alphas: Option<String>,
    /// Intensity ranks for `upper`, as a comma list.
    #[arg(long, default_value = "1,2,3,5,10")]
    pub ell: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    /// Electorate size.
    #[arg(long, default_value_t = 100)]
    pub total: u64,
    #[arg(long, default_value = "1/10:9/10:1/10")]
    pub alphas: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}
