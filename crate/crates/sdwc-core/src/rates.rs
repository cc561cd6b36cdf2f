//! Achievable-rate and secrecy evaluators for a concrete auxiliary policy.
//!
//! Every function here evaluates a closed information expression on the
//! induced joint `P(s)P(u,v|s)P(x|u,v,s)p(y,z|x,s)` — no maximization is
//! performed (that is the optimizer's job). Results are in bits per
//! channel use and, where the underlying statement requires nonnegative
//! rates, clamped at 0 on output.

use crate::channel::{induced_joint, AuxiliaryPolicy, DiscreteSDWC};
use crate::error::{Error, Result};
use crate::info::{entropy, Axis, JointTable, ProbVector};

/// Tolerance for regime-boundary ties; equalities within this margin
/// resolve to the superposition regime.
pub const REGIME_TIE_TOL: f64 = 1e-9;

/// Point-to-point rate of a channel with non-causal transmitter CSI when
/// the receiver can also learn the state description at rate `r_s`:
/// `min{ I(X;Y|S), max{ I(U,S;Y) − r_s, I(U;Y) − I(U;S) } }`, clamped at 0.
pub fn point_to_point_csit_rate(
    ch: &DiscreteSDWC,
    pol: &AuxiliaryPolicy,
    r_s: f64,
) -> Result<f64> {
    if !(r_s >= 0.0) {
        return Err(Error::Domain(format!("state rate r_s={r_s} must be >= 0")));
    }
    let t = induced_joint(ch, pol)?;
    let i_xy_s = t.mutual_information(&["X"], &["Y"], &["S"])?;
    let decodable = t.mutual_information(&["U", "S"], &["Y"], &[])? - r_s;
    let binned = t.mutual_information_raw(&["U"], &["Y"], &[])?
        - t.mutual_information_raw(&["U"], &["S"], &[])?;
    Ok(i_xy_s.min(decodable.max(binned)).max(0.0))
}

/// The three bounds of the Gel'fand–Pinsker-coding equivocation region,
/// each clamped at 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GpcBounds {
    /// Bound on the confidential rate `R₁`: `I(V;Y|U) − I(V;S|U)`.
    pub r1: f64,
    /// Bound on the total rate `R`: `I(V,U;Y) − I(V,U;S)`.
    pub r: f64,
    /// Bound on the equivocation rate: `I(V;Y|U) − I(V;S,Z|U)`.
    pub re: f64,
}

/// Region bounds achievable by binning both layers against the state
/// (Gel'fand–Pinsker coding).
pub fn gpc_region(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<GpcBounds> {
    let t = induced_joint(ch, pol)?;
    let r1 = t.mutual_information_raw(&["V"], &["Y"], &["U"])?
        - t.mutual_information_raw(&["V"], &["S"], &["U"])?;
    let r = t.mutual_information_raw(&["V", "U"], &["Y"], &[])?
        - t.mutual_information_raw(&["V", "U"], &["S"], &[])?;
    let re = t.mutual_information_raw(&["V"], &["Y"], &["U"])?
        - t.mutual_information_raw(&["V"], &["S", "Z"], &["U"])?;
    Ok(GpcBounds {
        r1: r1.max(0.0),
        r: r.max(0.0),
        re: re.max(0.0),
    })
}

/// Largest rate at which the whole message stays perfectly secret under
/// Gel'fand–Pinsker coding:
/// `min{ I(V,U;Y) − I(V,U;S), I(V;Y|U) − I(V;S,Z|U) }`, clamped at 0.
pub fn gpc_perfect_secrecy(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<f64> {
    let t = induced_joint(ch, pol)?;
    let rate = t.mutual_information_raw(&["V", "U"], &["Y"], &[])?
        - t.mutual_information_raw(&["V", "U"], &["S"], &[])?;
    let secrecy = t.mutual_information_raw(&["V"], &["Y"], &["U"])?
        - t.mutual_information_raw(&["V"], &["S", "Z"], &["U"])?;
    Ok(rate.min(secrecy).max(0.0))
}

/// GPC perfect-secrecy rate when the common layer carries the state
/// itself (U = S), which costs the receiver the state-reconstruction
/// penalty `H(S|Y)`: `I(V;Y|S) − max{ I(V;Z|S), H(S|Y) }`, clamped at 0.
pub fn gpc_secrecy_with_state_layer(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<f64> {
    let t = induced_joint(ch, pol)?;
    let gain = t.mutual_information_raw(&["V"], &["Y"], &["S"])?;
    let leak = t.mutual_information_raw(&["V"], &["Z"], &["S"])?;
    let state_penalty = t.conditional_entropy(&["S"], &["Y"])?;
    Ok((gain - leak.max(state_penalty)).max(0.0))
}

/// The two bounds of the superposition-coding equivocation region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpcBounds {
    /// Bound on the total rate `R`: `I(U,V;Y|S)`.
    pub r: f64,
    /// Bound on the equivocation rate: `I(V;Y|U,S) − I(V;Z|U,S)`,
    /// clamped at 0.
    pub re: f64,
}

/// Region bounds achievable by superposing the confidential layer on a
/// decodable common layer, with the receiver knowing the state.
pub fn spc_region(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<SpcBounds> {
    let t = induced_joint(ch, pol)?;
    let r = t.mutual_information(&["U", "V"], &["Y"], &["S"])?;
    let re = t.mutual_information_raw(&["V"], &["Y"], &["U", "S"])?
        - t.mutual_information_raw(&["V"], &["Z"], &["U", "S"])?;
    Ok(SpcBounds {
        r,
        re: re.max(0.0),
    })
}

/// Perfect-secrecy rate under superposition coding:
/// `I(V;Y|U,S) − I(V;Z|U,S)`, clamped at 0. Equals the `re` component of
/// [`spc_region`].
pub fn spc_perfect_secrecy(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<f64> {
    Ok(capacity_objective_raw(ch, pol)?.max(0.0))
}

/// Single-layer secrecy rate (no common layer): `I(V;Y|S) − I(V;Z|S)`,
/// clamped at 0. Must equal [`spc_perfect_secrecy`] whenever `U` is
/// degenerate.
pub fn spc_secrecy_single_layer(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<f64> {
    let t = induced_joint(ch, pol)?;
    let raw = t.mutual_information_raw(&["V"], &["Y"], &["S"])?
        - t.mutual_information_raw(&["V"], &["Z"], &["S"])?;
    Ok(raw.max(0.0))
}

/// The secrecy-capacity objective `I(V;Y|U,S) − I(V;Z|U,S)`, clamped at 0.
pub fn capacity_objective(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<f64> {
    Ok(capacity_objective_raw(ch, pol)?.max(0.0))
}

/// Unclamped secrecy-capacity objective, exposed for the optimizer and
/// diagnostics (may be negative).
pub fn capacity_objective_raw(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<f64> {
    let t = induced_joint(ch, pol)?;
    Ok(t.mutual_information_raw(&["V"], &["Y"], &["U", "S"])?
        - t.mutual_information_raw(&["V"], &["Z"], &["U", "S"])?)
}

/// Which coding scheme a state-description rate falls to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Superposition coding: the receiver can decode the state layer.
    Spc,
    /// Gel'fand–Pinsker coding: the state must be binned against.
    Gpc,
    /// Neither sufficient condition holds at this rate.
    Neither,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::Spc => "SPC",
            Regime::Gpc => "GPC",
            Regime::Neither => "NEITHER",
        };
        f.write_str(s)
    }
}

/// Classifies a state-description rate `r_s` against the two sufficient
/// conditions. SPC requires `r_s ≤ min{I(S;U,Y), I(S;V,Y|U)}`; GPC
/// requires `r_s ≥ max{ that same min, I(V,U;S) − I(U;Y|S) − I(V;Z|S) }`.
/// Boundary ties within [`REGIME_TIE_TOL`] resolve to SPC.
pub fn regime_check(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy, r_s: f64) -> Result<Regime> {
    let h_s = entropy(ch.state_prior());
    if !(r_s >= 0.0) || r_s > h_s + 1e-12 {
        return Err(Error::Domain(format!(
            "state rate r_s={r_s} outside [0, H(S)={h_s}]"
        )));
    }
    let (t_spc, t_gpc) = regime_thresholds(ch, pol)?;
    if r_s <= t_spc + REGIME_TIE_TOL {
        Ok(Regime::Spc)
    } else if r_s >= t_gpc - REGIME_TIE_TOL {
        Ok(Regime::Gpc)
    } else {
        Ok(Regime::Neither)
    }
}

/// The two thresholds used by [`regime_check`]:
/// `(min{I(S;U,Y), I(S;V,Y|U)}, max{ that, I(V,U;S) − I(U;Y|S) − I(V;Z|S) })`.
pub fn regime_thresholds(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<(f64, f64)> {
    let t = induced_joint(ch, pol)?;
    let spc = t
        .mutual_information_raw(&["S"], &["U", "Y"], &[])?
        .min(t.mutual_information_raw(&["S"], &["V", "Y"], &["U"])?);
    let binning_cost = t.mutual_information_raw(&["V", "U"], &["S"], &[])?
        - t.mutual_information_raw(&["U"], &["Y"], &["S"])?
        - t.mutual_information_raw(&["V"], &["Z"], &["S"])?;
    Ok((spc, spc.max(binning_cost)))
}

/// Minimum of `I(X;Y) − I(X;Z)` over candidate input distributions, with
/// the state marginalized out under its prior. A nonnegative margin
/// certifies the more-capable ordering on the tested grid only.
pub fn more_capable_margin(ch: &DiscreteSDWC, input_dists: &[ProbVector]) -> Result<f64> {
    if input_dists.is_empty() {
        return Err(Error::Validation(
            "more-capable margin needs at least one input distribution".into(),
        ));
    }
    let mut margin = f64::INFINITY;
    for px in input_dists {
        if px.len() != ch.card_x() {
            return Err(Error::Validation(format!(
                "input distribution has {} entries, expected card_x={}",
                px.len(),
                ch.card_x()
            )));
        }
        let t = JointTable::from_fn(
            vec![
                Axis::new("X", ch.card_x()),
                Axis::new("Y", ch.card_y()),
                Axis::new("Z", ch.card_z()),
            ],
            |idx| {
                let (x, y, z) = (idx[0], idx[1], idx[2]);
                let mut p = 0.0;
                for (s, ps) in ch.state_prior().probs().iter().enumerate() {
                    p += ps * ch.law(x, s, y, z);
                }
                px.probs()[x] * p
            },
        )?;
        let diff = t.mutual_information_raw(&["X"], &["Y"], &[])?
            - t.mutual_information_raw(&["X"], &["Z"], &[])?;
        margin = margin.min(diff);
    }
    Ok(margin)
}

/// Secrecy objective of the more-capable reduction,
/// `I(X;Y|S) − I(X;Z|S)` for a given input conditional `P(x|s)`
/// (one distribution per state), clamped at 0.
pub fn more_capable_capacity_objective(
    ch: &DiscreteSDWC,
    x_given_s: &[ProbVector],
) -> Result<f64> {
    if x_given_s.len() != ch.card_s() {
        return Err(Error::Validation(format!(
            "x_given_s has {} slices, expected card_s={}",
            x_given_s.len(),
            ch.card_s()
        )));
    }
    for (s, px) in x_given_s.iter().enumerate() {
        if px.len() != ch.card_x() {
            return Err(Error::Validation(format!(
                "x_given_s[{s}] has {} entries, expected card_x={}",
                px.len(),
                ch.card_x()
            )));
        }
    }
    let t = JointTable::from_fn(
        vec![
            Axis::new("S", ch.card_s()),
            Axis::new("X", ch.card_x()),
            Axis::new("Y", ch.card_y()),
            Axis::new("Z", ch.card_z()),
        ],
        |idx| {
            let (s, x, y, z) = (idx[0], idx[1], idx[2], idx[3]);
            ch.state_prior().probs()[s] * x_given_s[s].probs()[x] * ch.law(x, s, y, z)
        },
    )?;
    let raw = t.mutual_information_raw(&["X"], &["Y"], &["S"])?
        - t.mutual_information_raw(&["X"], &["Z"], &["S"])?;
    Ok(raw.max(0.0))
}

/// Evenly spaced Bernoulli input distributions `p = i/(n-1)` for
/// `i = 0..n`, the default certification grid for binary inputs.
pub fn bernoulli_grid(points: usize) -> Result<Vec<ProbVector>> {
    if points < 2 {
        return Err(Error::Validation("grid needs at least 2 points".into()));
    }
    (0..points)
        .map(|i| ProbVector::bernoulli(i as f64 / (points - 1) as f64))
        .collect()
}
