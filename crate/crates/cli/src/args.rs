use clap::{Args, Parser, Subcommand, ValueEnum};
use rhardy_core::inequality::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "rhardy", version, about = "Reverse Hardy inequalities with negative exponents on radial spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Report format; csv is available for sweep tables only
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,

    /// Relative quadrature tolerance [env: RHARDY_REL_TOL]
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,

    /// Absolute quadrature tolerance [env: RHARDY_ABS_TOL]
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    /// Panel budget per integral
    #[arg(long, global = true, default_value_t = rhardy_core::quadrature::DEFAULT_MAX_PANELS)]
    pub max_panels: usize,

    /// Seed for the randomized suites; recorded in every report
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Conjugate exponent and sandwich constants for (p, q)
    Constants(PairArgs),
    /// Condition constant D as the infimum of D(t)
    Condition(ConditionArgs),
    /// Ratio reports for a test function over cut-offs t
    Verify(VerifyArgs),
    /// Seeded reverse Minkowski suite on random panel grids
    Minkowski(MinkowskiArgs),
    /// Seeded reverse Hoelder suite on random panel pairs
    Hoelder(HoelderArgs),
    /// One condition or verify report per value of a swept parameter
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Exponent p in (0, 1)
    #[arg(long, allow_hyphen_values = true)]
    pub p: f64,

    /// Exponent q < 0
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    /// Space, e.g. euclidean:n=2, hyperbolic:n=2, cartan:n=2,b=1, homogeneous:Q=4,S=1
    #[arg(long)]
    pub space: String,

    /// Exponent of u = g^alpha
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,

    /// Exponent of v = g^beta
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,

    #[command(flatten)]
    pub pair: PairArgs,

    /// direct (inner integral over balls) or conjugate (over complements)
    #[arg(long, default_value = "direct")]
    pub form: String,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Lower end of the t search range
    #[arg(long, default_value_t = 1e-6)]
    pub t_lo: f64,

    /// Upper end of the t search range
    #[arg(long, default_value_t = 1e6)]
    pub t_hi: f64,

    /// Log-spaced grid nodes
    #[arg(long, default_value_t = 241)]
    pub grid_points: usize,

    /// Golden-section iterations
    #[arg(long, default_value_t = 60)]
    pub refine_iters: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ConditionArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,

    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    /// v^(1-p') cut off at each t
    Extremal,
    /// g^gamma on a fixed support
    Power,
}

#[derive(Args, Debug, Clone)]
pub struct TestFunctionArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Extremal)]
    pub family: FamilyArg,

    /// Gauge exponent of the power family
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,

    /// Support r0:r1 of the power family; r1 may be inf
    #[arg(long)]
    pub support: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,

    #[command(flatten)]
    pub function: TestFunctionArgs,

    /// A single cut-off
    #[arg(long, conflicts_with = "t_grid")]
    pub t: Option<f64>,

    /// Log-spaced cut-offs start:stop:count
    #[arg(long)]
    pub t_grid: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct MinkowskiArgs {
    #[arg(long, default_value_t = 200)]
    pub cases: usize,

    /// Panels per side of each random grid
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
}

#[derive(Args, Debug, Clone)]
pub struct HoelderArgs {
    #[arg(long, default_value_t = 500)]
    pub cases: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVerb {
    Condition,
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Alpha,
    Beta,
    P,
    Q,
    T,
    B,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Report computed for each row
    #[arg(long, value_enum)]
    pub verb: SweepVerb,

    /// Parameter to vary
    #[arg(long, value_enum)]
    pub param: SweepParam,

    /// start:stop:count
    #[arg(long, allow_hyphen_values = true)]
    pub range: String,

    /// Space the values logarithmically instead of linearly
    #[arg(long)]
    pub log: bool,

    /// Rows evaluated concurrently
    #[arg(long, default_value_t = 1)]
    pub workers: usize,

    #[command(flatten)]
    pub problem: ProblemArgs,

    #[command(flatten)]
    pub search: SearchArgs,

    #[command(flatten)]
    pub function: TestFunctionArgs,

    /// Cut-off for verify rows when t is not the swept parameter
    #[arg(long)]
    pub t: Option<f64>,
}
