//! Evaluation, optimization, and empirical validation of achievable
//! equivocation-rates and secrecy capacities for state-dependent wiretap
//! channels with non-causal transmitter channel-state information.
//!
//! The crate is organized in layers:
//!
//! * [`info`] — discrete information-theoretic kernel: probability
//!   vectors, dense joint tables, entropies, and mutual informations.
//! * [`channel`] — channel and auxiliary-policy types, JSON ingestion,
//!   and the induced joint distribution over `(S, U, V, X, Y, Z)`.
//! * [`rates`] — closed-form achievable-rate and secrecy evaluators for
//!   a fixed policy, plus the coding-regime classifier.
//! * [`optimizer`] — exhaustive grid search over auxiliary policies for
//!   the secrecy-capacity objective, and binary closed forms.
//! * [`gaussian`] — dirty-paper style closed forms for the Gaussian
//!   channel with additive interference known at the transmitter.
//! * [`sim`] — an exact small-blocklength binning simulator measuring
//!   decoding error and eavesdropper equivocation.
//!
//! All rates are in bits per channel use (base-2 logarithms). Quantities
//! that are defined as nonnegative are clamped at 0 on output; raw
//! (possibly negative) variants are exposed where diagnostics need them.
//!
//! With the default `parallel` feature the heavy loops (policy search,
//! simulation) run on a rayon pool; disabling it yields a dependency-free
//! sequential build with identical results.

pub mod channel;
pub mod error;
pub mod gaussian;
pub mod info;
pub mod optimizer;
pub mod rates;
pub mod sim;

pub use channel::{induced_joint, AuxiliaryPolicy, DiscreteSDWC, RatePoint};
pub use error::{Error, Result};
pub use gaussian::{
    alpha_beta_grid_argmax, classify_state_rate, dpc_entropies, epi_converse_bound,
    gpc_closed_rates, gpc_secrecy_rate as gaussian_gpc_secrecy_rate, gsdwc_capacity,
    optimal_lambdas, re1, re2, regime_boundary, sdpc_auxiliary,
    spc_secrecy_rate as gaussian_spc_secrecy_rate, sweep_alpha, DpcEntropies, DpcParams,
    GaussianSDWC, LambdaHat, SdpcAuxiliary, SweepRow,
};
pub use info::{
    awgn_capacity, binary_entropy, entropy, star, Axis, JointTable, ProbVector,
};
pub use optimizer::{
    binary_capacity, binary_objective, binary_regime_thresholds, optimize_secrecy,
    optimize_secrecy_trace, OptimizeResult, SearchSpec, POLICY_CAP,
};
pub use sim::{
    decode_map, encode, exact_equivocation, generate_codebook, run_experiment, transmit,
    Codebook, SimConfig, SimResult, MAX_EXACT_N,
};

pub use rates::{
    bernoulli_grid, capacity_objective, capacity_objective_raw, gpc_perfect_secrecy,
    gpc_region, gpc_secrecy_with_state_layer, more_capable_capacity_objective,
    more_capable_margin, point_to_point_csit_rate, regime_check, regime_thresholds,
    spc_perfect_secrecy, spc_region, spc_secrecy_single_layer, GpcBounds, Regime, SpcBounds,
};
