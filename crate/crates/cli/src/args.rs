use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "rhbounds",
    version,
    about = "Explicit RH-conditional bounds for ζ, M(x) and Q_k(x), with numerical checks"
)]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bound functions.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Regenerate the parameter tables.
    #[command(subcommand)]
    Tables(TablesCmd),
    /// Numerical lemma checks against a zero table.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Exact M(x), m(x) and Q_k(x) at checkpoints.
    Sieve(SieveArgs),
    /// Perron integral for M(x) against the sieve value.
    Perron(PerronArgs),
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// ω, ω₁ and ω₂ at (σ, t₀, u).
    Eval(EvalArgs),
    /// ω₀,₁, α and 𝓝₁ of the M(x) bound.
    Mertens(MertensArgs),
    /// ω₀,₂, 𝓝₂ and the exponent of the Q_k(x) bound.
    Kfree(KfreeArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub t0: f64,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub u: f64,
}

#[derive(Debug, Args)]
#[group(id = "x0", required = true, multiple = false, args = ["log_x0", "u0"])]
pub struct X0Args {
    /// log x₀.
    #[arg(long)]
    pub log_x0: Option<f64>,
    /// u₀, converted to log x₀ with the table convention of the command.
    #[arg(long)]
    pub u0: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MertensArgs {
    #[arg(long)]
    pub sigma0: f64,
    #[arg(long)]
    pub t0: f64,
    #[command(flatten)]
    pub x0: X0Args,
}

#[derive(Debug, Args)]
pub struct KfreeArgs {
    #[arg(long)]
    pub sigma0: f64,
    #[arg(long)]
    pub t1: f64,
    /// Defaults to 2γ₁.
    #[arg(long)]
    pub t2: Option<f64>,
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[command(flatten)]
    pub x0: X0Args,
}

#[derive(Debug, Subcommand)]
pub enum TablesCmd {
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Mertens,
    Kfree,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    /// Comma-separated targets; defaults to the ten reference targets.
    #[arg(long, value_delimiter = ',')]
    pub targets: Option<Vec<f64>>,
    /// Emit the rounded summary-table constants instead of the full rows.
    #[arg(long)]
    pub publish: bool,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// max |F_n| over the strip boundaries and max |1/ζ| on ∂S₀.
    RecipLemma(RecipArgs),
    /// max |ζ| over the boundary of [½, ¾] × [0, γ₂₇₀₃].
    SupLemma(SupArgs),
    /// log|ζ(s)| against the Q(u) integral.
    LogzetaIdentity(LogzetaArgs),
}

#[derive(Debug, Args)]
pub struct ZerosArg {
    /// Zero ordinates file; the bundled table is used when omitted.
    #[arg(long)]
    pub zeros: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RecipArgs {
    #[command(flatten)]
    pub zeros: ZerosArg,
    #[arg(long, default_value_t = 101)]
    pub points_per_edge: usize,
    #[arg(long, default_value_t = 2.0)]
    pub refine_threshold: f64,
    /// Scan only these strips (0 = S₀), as a comma list or a..b ranges.
    #[arg(long)]
    pub strips: Option<String>,
}

#[derive(Debug, Args)]
pub struct SupArgs {
    #[command(flatten)]
    pub zeros: ZerosArg,
    #[arg(long, default_value_t = 101)]
    pub points_per_edge: usize,
}

#[derive(Debug, Args)]
pub struct LogzetaArgs {
    #[command(flatten)]
    pub zeros: ZerosArg,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 3000.0)]
    pub u_max: f64,
    /// Defaults to t.
    #[arg(long)]
    pub t0: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SieveArgs {
    #[arg(long)]
    pub limit: u64,
    /// Comma-separated integers, or `10^a..10^b step *10`.
    #[arg(long)]
    pub checkpoints: String,
    /// Values of k for Q_k columns.
    #[arg(long, value_delimiter = ',')]
    pub qk: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct PerronArgs {
    #[arg(long)]
    pub x: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub quad_tol: f64,
}
