//! `sdwc` — capacity queries, region sweeps, regime maps, policy-space
//! optimization and binning simulations for state-dependent wiretap
//! channels, with machine-readable CSV/JSON output.
//!
//! Exit codes: 0 success, 2 validation/domain problem, 3 resource cap
//! (table cells, policy count, or simulator blocklength).
//!
//! Every file output gets a `<file>.manifest.json` sidecar recording the
//! fully-resolved parameters, tool version and seed, from which the output
//! can be regenerated byte-for-byte.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sdwc",
    version,
    about = "Evaluate, optimize and simulate state-dependent wiretap channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Secrecy capacity of a binary or Gaussian SD-WC, with the
    /// attaining parameters and regime thresholds.
    #[command(subcommand)]
    Capacity(CapacityCmd),
    /// Equivocation-region bounds of auxiliary policies on a discrete
    /// channel, one CSV row per policy.
    Region(RegionArgs),
    /// Classify state-description rates into coding regimes over a grid.
    #[command(subcommand, name = "regime-map")]
    RegimeMap(RegimeMapCmd),
    /// Exhaustive auxiliary-policy search for the secrecy objective.
    Optimize(OptimizeArgs),
    /// Monte Carlo binning simulation with exact equivocation.
    Simulate(SimulateArgs),
}

#[derive(Subcommand)]
enum CapacityCmd {
    /// Binary channel: Y = X⊕S⊕η₁, Z = X⊕S⊕η₂.
    Binary(BinaryArgs),
    /// Gaussian dirty-paper channel: Y = X+S+η₁, Z = X+S+η₂.
    Gaussian(GaussianArgs),
}

#[derive(Args)]
struct BinaryArgs {
    /// Main-channel crossover probability.
    #[arg(long)]
    n1: f64,
    /// Eavesdropper crossover probability.
    #[arg(long)]
    n2: f64,
    /// State bias P(S=1).
    #[arg(long, default_value_t = 0.5)]
    q: f64,
}

#[derive(Args)]
struct GaussianArgs {
    /// Transmit power.
    #[arg(long)]
    p: f64,
    /// State power.
    #[arg(long)]
    q: f64,
    /// Main-channel noise variance.
    #[arg(long)]
    n1: f64,
    /// Eavesdropper noise variance.
    #[arg(long)]
    n2: f64,
    /// Write an α-sweep CSV (β=0, stationary λ̂'s per α) to this path.
    #[arg(long)]
    sweep_out: Option<PathBuf>,
    /// Grid steps of the α sweep.
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    /// Both layers binned against the state (Gel'fand–Pinsker coding).
    Gpc,
    /// Confidential layer superposed on a decodable common layer.
    Spc,
}

#[derive(Args)]
struct RegionArgs {
    /// Coding scheme whose region bounds are evaluated.
    #[arg(value_enum)]
    scheme: Scheme,
    /// Channel JSON document.
    #[arg(long)]
    channel: PathBuf,
    /// Policy JSON document: a single policy object or an array of them.
    #[arg(long)]
    policies: PathBuf,
    /// Write CSV here instead of stdout (adds a manifest sidecar).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RegimeMapCmd {
    /// Gaussian channel; the boundary column carries the SPC/GPC split.
    Gaussian(RegimeGaussianArgs),
    /// Discrete channel with an explicit auxiliary policy.
    Discrete(RegimeDiscreteArgs),
}

#[derive(Args)]
struct RegimeGaussianArgs {
    /// Transmit power.
    #[arg(long)]
    p: f64,
    /// State power.
    #[arg(long)]
    q: f64,
    /// Main-channel noise variance.
    #[arg(long)]
    n1: f64,
    /// Eavesdropper noise variance.
    #[arg(long)]
    n2: f64,
    /// Number of grid intervals.
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Upper end of the state-rate grid; defaults to twice the boundary.
    #[arg(long)]
    max_rs: Option<f64>,
    /// Write CSV here instead of stdout (adds a manifest sidecar).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RegimeDiscreteArgs {
    /// Channel JSON document.
    #[arg(long)]
    channel: PathBuf,
    /// Policy JSON document (a single policy).
    #[arg(long)]
    policy: PathBuf,
    /// Number of grid intervals over [0, H(S)].
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Write CSV here instead of stdout (adds a manifest sidecar).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Channel JSON document.
    #[arg(long)]
    channel: PathBuf,
    /// Cardinality of the common-layer auxiliary U.
    #[arg(long, default_value_t = 1)]
    card_u: usize,
    /// Cardinality of the confidential-layer auxiliary V.
    #[arg(long, default_value_t = 2)]
    card_v: usize,
    /// Lattice points per probability-simplex dimension.
    #[arg(long, default_value_t = 11)]
    grid_steps: usize,
    /// Restrict P(x|u,v,s) to deterministic maps.
    #[arg(long)]
    deterministic_x: bool,
    /// Stream every enumerated (policy_id, objective) pair to this CSV;
    /// intended for small grids — the file grows with the search space.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SimulateArgs {
    /// Blocklength (at most 14: results are exact enumerations).
    #[arg(long)]
    n: usize,
    /// Message rate in bits/use.
    #[arg(long)]
    rate_r: f64,
    /// Randomization rate; defaults to [1 − H(N₂) − 0.05]⁺, just below
    /// the eavesdropper's effective capacity.
    #[arg(long)]
    rate_rand: Option<f64>,
    /// Main-channel crossover probability.
    #[arg(long)]
    n1: f64,
    /// Eavesdropper crossover probability.
    #[arg(long)]
    n2: f64,
    /// State bias P(S=1).
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    /// Monte Carlo trials per codebook for the error estimate.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Root seed of the first codebook.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of consecutive codebook seeds to run (one row each).
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of stdout (adds a manifest sidecar).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Die quietly when a downstream pipe closes (`sdwc … | head`), like
/// other Unix filters, instead of panicking inside `println!`.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
