//! Dirty-paper closed forms for the Gaussian channel with additive
//! interference known non-causally at the transmitter.
//!
//! The model: `Y = X + S + η₁`, `Z = X + S + η₂` with `S ~ N(0,Q)`,
//! `η_i ~ N(0,N_i)`, and transmit power `P`. The input splits as
//! `X = X₁ + X₂ + K·S` with `X₁ ~ N(0, αβ̄P)` carrying the confidential
//! layer, `X₂ ~ N(0, αβP)` the common layer, and `K = √(ᾱP/Q)` the
//! state-amplification coefficient (`K = 0` by convention when `Q = 0`,
//! reported via a flag). The auxiliaries are `V = X₁ + λ₁S` and
//! `U = X₂ + λ₂S`.
//!
//! All entropies are differential, in bits. Variables whose variance
//! vanishes (within [`SINGULARITY_TOL`]) are almost-surely constant at
//! the given parameters; they are dropped from every group and
//! conditioning set so that the reported entropies stay finite and the
//! assembled rate differences equal their distributional values. A
//! genuinely degenerate conditional covariance among non-constant
//! variables (for example `V = λ₁S` conditioned on `S`) raises a
//! singularity error naming the offending term.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::info::awgn_capacity;
use crate::rates::Regime;

/// Variances at or below this threshold are treated as exactly zero.
pub const SINGULARITY_TOL: f64 = 1e-12;

/// Gaussian state-dependent wiretap channel parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSDWC {
    p: f64,
    q: f64,
    n1: f64,
    n2: f64,
}

impl GaussianSDWC {
    pub fn new(p: f64, q: f64, n1: f64, n2: f64) -> Result<Self> {
        if !(p >= 0.0) || !(q >= 0.0) {
            return Err(Error::Validation(format!(
                "powers must be nonnegative, got p={p}, q={q}"
            )));
        }
        if !(n1 > 0.0) || !(n2 > 0.0) {
            return Err(Error::Validation(format!(
                "noise variances must be positive, got n1={n1}, n2={n2}"
            )));
        }
        Ok(Self { p, q, n1, n2 })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn n1(&self) -> f64 {
        self.n1
    }
    pub fn n2(&self) -> f64 {
        self.n2
    }
}

/// Power-split and binning coefficients of the dirty-paper construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpcParams {
    pub alpha: f64,
    pub beta: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl DpcParams {
    pub fn new(alpha: f64, beta: f64, lambda1: f64, lambda2: f64) -> Result<Self> {
        for (name, v) in [
            ("alpha", alpha),
            ("beta", beta),
            ("lambda1", lambda1),
            ("lambda2", lambda2),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("{name}={v} outside [0,1]")));
            }
        }
        Ok(Self {
            alpha,
            beta,
            lambda1,
            lambda2,
        })
    }
}

/// Scalar intermediates shared by the closed forms.
struct Intermediates {
    a: f64,     // Var(X₁) = αβ̄P
    b: f64,     // Var(X₂) = αβP
    var_v: f64, // a + λ₁²Q
    var_u: f64, // b + λ₂²Q
    big_b: f64, // Var(Y)
    c_vy: f64,  // Cov(V,Y) = a + λ₁(K+1)Q
    c_uy: f64,  // Cov(U,Y) = Cov(U,Z) = b + λ₂(K+1)Q
    c_vu: f64,  // Cov(V,U) = λ₁λ₂Q
    v_const: bool,
    u_const: bool,
    s_const: bool,
    k_convention: bool,
}

fn intermediates(ch: &GaussianSDWC, dp: &DpcParams) -> Intermediates {
    let (p, q) = (ch.p, ch.q);
    let a = dp.alpha * (1.0 - dp.beta) * p;
    let b = dp.alpha * dp.beta * p;
    let residual = (1.0 - dp.alpha) * p;
    let (k, k_convention) = if q > SINGULARITY_TOL {
        ((residual / q).sqrt(), false)
    } else {
        (0.0, residual > SINGULARITY_TOL)
    };
    let kappa = k + 1.0;
    let big_b = if q > SINGULARITY_TOL {
        // Var(Y) = a + b + K²Q + 2KQ + Q + N₁ with K²Q = ᾱP.
        p + (2.0 * k + 1.0) * q + ch.n1
    } else {
        // Under the K = 0 convention the residual power goes unused.
        a + b + ch.n1
    };
    Intermediates {
        a,
        b,
        var_v: a + dp.lambda1 * dp.lambda1 * q,
        var_u: b + dp.lambda2 * dp.lambda2 * q,
        big_b,
        c_vy: a + dp.lambda1 * kappa * q,
        c_uy: b + dp.lambda2 * kappa * q,
        c_vu: dp.lambda1 * dp.lambda2 * q,
        v_const: a + dp.lambda1 * dp.lambda1 * q <= SINGULARITY_TOL,
        u_const: b + dp.lambda2 * dp.lambda2 * q <= SINGULARITY_TOL,
        s_const: q <= SINGULARITY_TOL,
        k_convention,
    }
}

/// ½·log₂(2πe·var) — differential entropy of one Gaussian dimension.
fn h1(var: f64) -> f64 {
    0.5 * (2.0 * PI * E * var).log2()
}

/// ½·log₂((2πe)²·det) — differential entropy of two joint dimensions.
fn h2(det: f64) -> f64 {
    0.5 * ((2.0 * PI * E) * (2.0 * PI * E) * det).log2()
}

fn positive(x: f64, term: &str) -> Result<f64> {
    if x > SINGULARITY_TOL {
        Ok(x)
    } else {
        Err(Error::Singularity(format!(
            "{term} has a degenerate conditional covariance ({x:.3e})"
        )))
    }
}

/// The six conditional differential entropies of the dirty-paper
/// construction, in bits, after dropping almost-surely constant
/// variables.
#[derive(Debug, Clone, PartialEq)]
pub struct DpcEntropies {
    pub h_vu_given_s: f64,
    pub h_vu_given_y: f64,
    pub h_v_given_u: f64,
    pub h_v_given_yu: f64,
    pub h_sz_given_u: f64,
    pub h_sz_given_uv: f64,
    /// Variables dropped as almost-surely constant (`"V"`, `"U"`, `"S"`).
    pub dropped: Vec<&'static str>,
    /// True when `q = 0` forced the `K = 0` convention while `ᾱP > 0`.
    pub k_convention: bool,
}

/// Evaluates the six closed-form entropies at the given parameters.
pub fn dpc_entropies(ch: &GaussianSDWC, dp: &DpcParams) -> Result<DpcEntropies> {
    let im = intermediates(ch, dp);
    let (n2, q) = (ch.n2, ch.q);

    // H(V,U|S): conditioning on S leaves the independent pair (X₁,X₂).
    let h_vu_given_s = match (im.v_const, im.u_const) {
        (true, true) => 0.0,
        (false, true) => h1(positive(im.a, "H(V,U|S)")?),
        (true, false) => h1(positive(im.b, "H(V,U|S)")?),
        (false, false) => {
            let det = positive(im.a, "H(V,U|S)")? * positive(im.b, "H(V,U|S)")?;
            h2(det)
        }
    };

    // H(V,U|Y): rank-one update of the (V,U) covariance by Y.
    let h_vu_given_y = match (im.v_const, im.u_const) {
        (true, true) => 0.0,
        (false, true) => h1(positive(
            im.var_v - im.c_vy * im.c_vy / im.big_b,
            "H(V,U|Y)",
        )?),
        (true, false) => h1(positive(
            im.var_u - im.c_uy * im.c_uy / im.big_b,
            "H(V,U|Y)",
        )?),
        (false, false) => {
            let det_m = im.var_u * im.var_v - im.c_vu * im.c_vu;
            let big_a = -im.var_u * im.c_vy * im.c_vy - im.var_v * im.c_uy * im.c_uy
                + 2.0 * im.c_vu * im.c_vy * im.c_uy;
            h2(positive(det_m + big_a / im.big_b, "H(V,U|Y)")?)
        }
    };

    // H(V|U).
    let h_v_given_u = match (im.v_const, im.u_const) {
        (true, _) => 0.0,
        (false, true) => h1(positive(im.var_v, "H(V|U)")?),
        (false, false) => h1(positive(
            im.var_v - im.c_vu * im.c_vu / im.var_u,
            "H(V|U)",
        )?),
    };

    // H(V|Y,U).
    let h_v_given_yu = match (im.v_const, im.u_const) {
        (true, _) => 0.0,
        (false, true) => h1(positive(
            im.var_v - im.c_vy * im.c_vy / im.big_b,
            "H(V|Y,U)",
        )?),
        (false, false) => {
            let d = positive(im.var_u * im.big_b - im.c_uy * im.c_uy, "H(V|Y,U)")?;
            let c = -im.c_vu * im.c_vu * im.big_b - im.var_u * im.c_vy * im.c_vy
                + 2.0 * im.c_vu * im.c_vy * im.c_uy;
            h1(positive(im.var_v + c / d, "H(V|Y,U)")?)
        }
    };

    // H(S,Z|U) = H(S|U) + H(Z|S,U).
    let h_sz_given_u = if im.s_const {
        // S dropped: H(Z|U).
        if im.u_const {
            h1(im.a + im.b + n2)
        } else {
            h1(positive(
                (im.a + im.b + n2) - im.c_uy * im.c_uy / im.var_u,
                "H(S,Z|U)",
            )?)
        }
    } else if im.u_const {
        // H(S) + H(Z|S).
        h1(q) + h1(im.a + im.b + n2)
    } else {
        h1(positive(im.b * q / im.var_u, "H(S,Z|U)")?) + h1(im.a + n2)
    };

    // H(S,Z|U,V) = H(S|U,V) + H(Z|S,U,V).
    let h_sz_given_uv = if im.s_const {
        match (im.v_const, im.u_const) {
            (true, true) => h1(im.a + im.b + n2),
            (true, false) => h1(positive(
                (im.a + im.b + n2) - im.c_uy * im.c_uy / im.var_u,
                "H(S,Z|U,V)",
            )?),
            // With Q = 0, Cov(Z,V) = a.
            (false, true) => h1(positive(
                (im.a + im.b + n2) - im.a * im.a / im.var_v,
                "H(S,Z|U,V)",
            )?),
            (false, false) => h1(n2),
        }
    } else {
        match (im.v_const, im.u_const) {
            (true, true) => h1(q) + h1(im.a + im.b + n2),
            (true, false) => {
                h1(positive(im.b * q / im.var_u, "H(S,Z|U,V)")?) + h1(im.a + n2)
            }
            (false, true) => {
                h1(positive(im.a * q / im.var_v, "H(S,Z|U,V)")?) + h1(im.b + n2)
            }
            (false, false) => {
                let denom = im.a * im.b
                    + dp.lambda1 * dp.lambda1 * im.b * q
                    + dp.lambda2 * dp.lambda2 * im.a * q;
                let var_s = positive(im.a * im.b * q / positive(denom, "H(S,Z|U,V)")?, "H(S,Z|U,V)")?;
                h1(var_s) + h1(n2)
            }
        }
    };

    let mut dropped = Vec::new();
    if im.v_const {
        dropped.push("V");
    }
    if im.u_const {
        dropped.push("U");
    }
    if im.s_const {
        dropped.push("S");
    }
    Ok(DpcEntropies {
        h_vu_given_s,
        h_vu_given_y,
        h_v_given_u,
        h_v_given_yu,
        h_sz_given_u,
        h_sz_given_uv,
        dropped,
        k_convention: im.k_convention,
    })
}

/// Equivocation bound `I(V,U;Y) − I(V,U;S) = H(V,U|S) − H(V,U|Y)`.
pub fn re1(ch: &GaussianSDWC, dp: &DpcParams) -> Result<f64> {
    let h = dpc_entropies(ch, dp)?;
    Ok(h.h_vu_given_s - h.h_vu_given_y)
}

/// Equivocation bound `I(V;Y|U) − I(V;S,Z|U)
/// = H(V|U) − H(V|Y,U) − H(S,Z|U) + H(S,Z|U,V)`.
pub fn re2(ch: &GaussianSDWC, dp: &DpcParams) -> Result<f64> {
    let h = dpc_entropies(ch, dp)?;
    Ok(h.h_v_given_u - h.h_v_given_yu - h.h_sz_given_u + h.h_sz_given_uv)
}

/// Stationary binning coefficients, with clamping diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaHat {
    pub lambda1: f64,
    pub lambda2: f64,
    /// True when either coefficient fell outside [0,1] and was clamped.
    pub clamped: bool,
    /// True when `q = 0` forced the `K = 0` convention while `ᾱP > 0`.
    pub k_convention: bool,
}

/// The stationary binning coefficients
/// `λ̂₁ = αβ̄P(K+1)/(αP+N₁)` and `λ̂₂ = αβP(K+1)/(αP+N₁)`.
pub fn optimal_lambdas(ch: &GaussianSDWC, alpha: f64, beta: f64) -> Result<LambdaHat> {
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) {
        return Err(Error::Domain(format!(
            "alpha={alpha}, beta={beta} must lie in [0,1]"
        )));
    }
    let residual = (1.0 - alpha) * ch.p;
    let (k, k_convention) = if ch.q > SINGULARITY_TOL {
        ((residual / ch.q).sqrt(), false)
    } else {
        (0.0, residual > SINGULARITY_TOL)
    };
    let m = alpha * ch.p + ch.n1;
    let l1 = alpha * (1.0 - beta) * ch.p * (k + 1.0) / m;
    let l2 = alpha * beta * ch.p * (k + 1.0) / m;
    let clamped = !(0.0..=1.0).contains(&l1) || !(0.0..=1.0).contains(&l2);
    Ok(LambdaHat {
        lambda1: l1.clamp(0.0, 1.0),
        lambda2: l2.clamp(0.0, 1.0),
        clamped,
        k_convention,
    })
}

/// The closed-form rates at the stationary coefficients with `β = 0`:
/// `(C(αP/N₁), C(αP/N₁) − C(αP/N₂))`.
pub fn gpc_closed_rates(ch: &GaussianSDWC, alpha: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha={alpha} outside [0,1]")));
    }
    let c1 = awgn_capacity(alpha * ch.p / ch.n1)?;
    let c2 = awgn_capacity(alpha * ch.p / ch.n2)?;
    Ok((c1, c1 - c2))
}

/// Best secrecy rate of the binning scheme over all parameters:
/// `[C(P/N₁) − C(P/N₂)]⁺` (attained at `α = 1, β = 0, λ = λ̂`; zero when
/// the eavesdropper's channel is the stronger one).
pub fn gpc_secrecy_rate(ch: &GaussianSDWC) -> f64 {
    let diff = awgn_capacity(ch.p / ch.n1).expect("nonnegative SNR")
        - awgn_capacity(ch.p / ch.n2).expect("nonnegative SNR");
    diff.max(0.0)
}

/// Best secrecy rate of the superposition scheme (`V = X`, no common
/// layer, receiver-side state): the same `[C(P/N₁) − C(P/N₂)]⁺`.
pub fn spc_secrecy_rate(ch: &GaussianSDWC) -> f64 {
    let diff = awgn_capacity(ch.p / ch.n1).expect("nonnegative SNR")
        - awgn_capacity(ch.p / ch.n2).expect("nonnegative SNR");
    diff.max(0.0)
}

/// Secrecy capacity of the Gaussian channel: `[C(P/N₁) − C(P/N₂)]⁺`,
/// independent of the state power.
pub fn gsdwc_capacity(ch: &GaussianSDWC) -> f64 {
    let diff = awgn_capacity(ch.p / ch.n1).expect("nonnegative SNR")
        - awgn_capacity(ch.p / ch.n2).expect("nonnegative SNR");
    diff.max(0.0)
}

/// State-rate threshold `I(S;Y) = C(Q/(P+N₁))` separating the
/// superposition regime from the binning regime.
pub fn regime_boundary(ch: &GaussianSDWC) -> f64 {
    awgn_capacity(ch.q / (ch.p + ch.n1)).expect("nonnegative ratio")
}

/// Classifies a state-description rate against [`regime_boundary`]:
/// at or below the boundary the state layer is decodable (SPC), above it
/// the state must be binned against (GPC).
pub fn classify_state_rate(ch: &GaussianSDWC, r_s: f64) -> Result<Regime> {
    if !(r_s >= 0.0) {
        return Err(Error::Domain(format!("state rate r_s={r_s} must be >= 0")));
    }
    Ok(if r_s <= regime_boundary(ch) {
        Regime::Spc
    } else {
        Regime::Gpc
    })
}

/// Converse upper bound from the entropy power inequality under the
/// degraded reduction `η₂ = η₁ + η₂′`:
/// `½log₂(N₂/N₁) − ½log₂((P+N₂)/(P+N₁))`.
pub fn epi_converse_bound(ch: &GaussianSDWC) -> Result<f64> {
    if ch.n2 < ch.n1 {
        return Err(Error::Domain(format!(
            "EPI bound needs n2 >= n1 (degraded eavesdropper), got n1={}, n2={}",
            ch.n1, ch.n2
        )));
    }
    Ok(0.5 * (ch.n2 / ch.n1).log2() - 0.5 * ((ch.p + ch.n2) / (ch.p + ch.n1)).log2())
}

/// The secure dirty-paper auxiliary: `V = X + coefficient·S` with a
/// degenerate common layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdpcAuxiliary {
    /// The precoding coefficient `P/(P+N₁)`.
    pub coefficient: f64,
    /// The common layer is always degenerate in this construction.
    pub u_degenerate: bool,
}

impl std::fmt::Display for SdpcAuxiliary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "V = X + {:.6}·S, U = ∅", self.coefficient)
    }
}

/// Describes the capacity-attaining auxiliary choice `V = X + P/(P+N₁)·S`.
pub fn sdpc_auxiliary(ch: &GaussianSDWC) -> SdpcAuxiliary {
    SdpcAuxiliary {
        coefficient: ch.p / (ch.p + ch.n1),
        u_degenerate: true,
    }
}

/// Grid check of the outer (α,β) optimization: maximizes
/// `min{re1, re2}` at the stationary λ̂ over an evenly spaced grid.
/// Ties within 1e-12 prefer larger α, then smaller β, making the
/// reported argmax deterministic along flat ridges.
pub fn alpha_beta_grid_argmax(ch: &GaussianSDWC, steps: usize) -> Result<(f64, f64, f64)> {
    if steps < 2 {
        return Err(Error::Validation("grid needs at least 2 steps".into()));
    }
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 0..steps {
        let alpha = i as f64 / (steps - 1) as f64;
        for j in 0..steps {
            let beta = j as f64 / (steps - 1) as f64;
            let lh = optimal_lambdas(ch, alpha, beta)?;
            let dp = DpcParams::new(alpha, beta, lh.lambda1, lh.lambda2)?;
            let h = dpc_entropies(ch, &dp)?;
            let v1 = h.h_vu_given_s - h.h_vu_given_y;
            let v2 = h.h_v_given_u - h.h_v_given_yu - h.h_sz_given_u + h.h_sz_given_uv;
            let v = v1.min(v2);
            let better = v > best.2 + 1e-12
                || (v > best.2 - 1e-12
                    && (alpha > best.0 + 1e-15
                        || ((alpha - best.0).abs() <= 1e-15 && beta < best.1)));
            if better {
                best = (alpha, beta, v);
            }
        }
    }
    Ok(best)
}

/// One row of the α-sweep at `β = 0` with stationary coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub re1: f64,
    pub re2: f64,
}

/// Sweeps α over an even grid at `β = 0`, evaluating the assembled
/// `re1`/`re2` at the stationary coefficients for each point.
pub fn sweep_alpha(ch: &GaussianSDWC, steps: usize) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::Validation("sweep needs at least 2 steps".into()));
    }
    (0..steps)
        .map(|i| {
            let alpha = i as f64 / (steps - 1) as f64;
            let lh = optimal_lambdas(ch, alpha, 0.0)?;
            let dp = DpcParams::new(alpha, 0.0, lh.lambda1, lh.lambda2)?;
            let h = dpc_entropies(ch, &dp)?;
            Ok(SweepRow {
                alpha,
                beta: 0.0,
                lambda1: lh.lambda1,
                lambda2: lh.lambda2,
                re1: h.h_vu_given_s - h.h_vu_given_y,
                re2: h.h_v_given_u - h.h_v_given_yu - h.h_sz_given_u + h.h_sz_given_uv,
            })
        })
        .collect()
}
