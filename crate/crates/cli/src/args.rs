use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sinrsched_core::gen::LowerBoundVariant;
use sinrsched_core::Mode;

#[derive(Debug, Parser)]
#[command(name = "sinrsched", version, about = "SINR link scheduling with oblivious power")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Check a schedule or a subset for feasibility.
    Check(CheckArgs),
    /// Partition all links into feasible slots.
    Schedule(RunArgs),
    /// Pick one large feasible subset.
    Capacity(CapacityArgs),
    /// Exact optimum by exhaustive search.
    Oracle(OracleArgs),
    /// Run an algorithm and the oracle, report the ratio.
    Compare(CompareArgs),
    /// Print the separation and approximation constants for an instance.
    Bound(BoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Uni,
    Bi,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Uni => Mode::Unidirectional,
            ModeArg::Bi => Mode::Bidirectional,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Equilength instances: first-fit on a unit disc graph, uniform power.
    Udg,
    /// One slot family per length group, uniform power.
    Groups,
    /// Online first-fit per length group, uniform power.
    Online,
    /// Well-separated classes with mean power.
    Mean,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Udg => "udg",
            Algo::Groups => "groups",
            Algo::Online => "online",
            Algo::Mean => "mean",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Random,
    Equilength,
    Dispersed,
    Grid,
    Lowerbound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Forward,
    Reversed,
    Combined,
}

impl From<VariantArg> for LowerBoundVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Forward => LowerBoundVariant::Forward,
            VariantArg::Reversed => LowerBoundVariant::Reversed,
            VariantArg::Combined => LowerBoundVariant::Combined,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Objective {
    Schedule,
    Capacity,
    Weighted,
}

/// Physical parameters shared by the generators.
#[derive(Debug, Clone, Args)]
pub struct PhysArgs {
    #[arg(long, default_value_t = 3.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Uni)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 2)]
    pub dim: u32,
    /// Packing constant C; defaults to 0.907 in the plane.
    #[arg(long = "packing-constant")]
    pub packing_constant: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value_t = GenKind::Random)]
    pub kind: GenKind,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 100.0)]
    pub side: f64,
    #[arg(long = "len-min", default_value_t = 1.0)]
    pub len_min: f64,
    #[arg(long = "len-max", default_value_t = 10.0)]
    pub len_max: f64,
    /// Base length for equilength instances.
    #[arg(long, default_value_t = 1.0)]
    pub len: f64,
    /// Minimum sender separation for dispersed instances.
    #[arg(long = "min-sep", default_value_t = 10.0)]
    pub min_sep: f64,
    /// Grid side for grid instances.
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    /// Grid spacing in link lengths.
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    #[arg(long, default_value_t = 4)]
    pub t: u32,
    #[arg(long, default_value_t = 0)]
    pub c1: u32,
    #[arg(long, value_enum, default_value_t = VariantArg::Forward)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub phys: PhysArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Schedule or capacity document to verify.
    #[arg(long, conflicts_with = "subset", required_unless_present = "subset")]
    pub schedule: Option<PathBuf>,
    /// Comma-separated link ids forming one slot.
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<u64>>,
    /// uniform, linear, mean, psi, log, custom:GAMMA,DELTA or control.
    #[arg(long)]
    pub power: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Mean)]
    pub algo: Algo,
    /// Must match the algorithm's own power assignment.
    #[arg(long)]
    pub power: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Shuffles the arrival order of the online algorithm.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Signal level for the equilength algorithm; defaults to beta.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CapacityArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Maximize total weight instead of size.
    #[arg(long)]
    pub weighted: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Objective::Schedule)]
    pub objective: Objective,
    /// Fixed power to optimize under; power control when omitted.
    #[arg(long)]
    pub power: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long, conflicts_with = "seeds", required_unless_present = "seeds")]
    pub input: Option<PathBuf>,
    /// Seed range `a..b` or `a..=b` of random instances.
    #[arg(long)]
    pub seeds: Option<String>,
    #[arg(long, value_enum, default_value_t = Algo::Mean)]
    pub algo: Algo,
    /// Oracle feasibility; power control when omitted.
    #[arg(long)]
    pub power: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 30.0)]
    pub side: f64,
    #[arg(long = "len-min", default_value_t = 1.0)]
    pub len_min: f64,
    #[arg(long = "len-max", default_value_t = 10.0)]
    pub len_max: f64,
    #[command(flatten)]
    pub phys: PhysArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Signal level; defaults to beta.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}
