//! Exhaustive grid maximization of the secrecy objective over auxiliary
//! policies, and the binary-channel closed forms it independently
//! reproduces.
//!
//! The search space is a product over states: for each `s` a lattice
//! point of the probability simplex over `(u,v)` and a conditional
//! `P(x|u,v)` (deterministic map or per-cell lattice point). Because the
//! objective `I(V;Y|U,S) − I(V;Z|U,S)` is an expectation over `S` of
//! per-state terms, and each per-state term depends only on that state's
//! slice of the policy, the global maximum is the prior-weighted sum of
//! per-slice maxima. The optimizer exploits this: it enumerates each
//! state's slice space once instead of the full product, returning
//! exactly the same argmax (and the same lexicographic tie-break) as the
//! naive product scan.
//!
//! Policy encoding (for tie-breaking and traces): slices are ordered by
//! state, most significant first; within a slice the simplex-lattice
//! index is more significant than the `P(x|·)` assignment index. Lattice
//! points are ordered by ascending lexicographic order of their integer
//! compositions; assignment indices are mixed-radix numbers over the
//! `(u,v)` cells, cell `(0,0)` most significant.

use crate::channel::{AuxiliaryPolicy, DiscreteSDWC};
use crate::error::{Error, Result};
use crate::info::{binary_entropy, star, Axis, JointTable};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Hard cap on the number of enumerated policies.
pub const POLICY_CAP: u128 = 100_000_000;

/// Chunk size for parallel slice scans (also the sequential batch size,
/// so both modes visit candidates in the identical order).
const CHUNK: usize = 1024;

/// Search-space description for [`optimize_secrecy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpec {
    /// Cardinality of the common-layer auxiliary `U`.
    pub card_u: usize,
    /// Cardinality of the confidential-layer auxiliary `V`.
    pub card_v: usize,
    /// Lattice points per probability-simplex dimension (≥ 2).
    pub grid_steps: usize,
    /// Restrict `P(x|u,v,s)` to deterministic maps instead of lattice
    /// points of the simplex over `x`.
    pub deterministic_x: bool,
}

impl SearchSpec {
    fn validate(&self) -> Result<()> {
        if self.card_u == 0 || self.card_v == 0 {
            return Err(Error::Validation(
                "auxiliary cardinalities must be ≥ 1".into(),
            ));
        }
        if self.grid_steps < 2 {
            return Err(Error::Validation(format!(
                "grid_steps={} must be ≥ 2",
                self.grid_steps
            )));
        }
        Ok(())
    }
}

/// Outcome of a grid search: the maximizing policy, its objective value
/// (clamped at 0), its encoding, and the size of the enumerated space.
#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub policy: AuxiliaryPolicy,
    pub value: f64,
    pub policy_id: u128,
    pub enumerated: u128,
}

// ---------------------------------------------------------------------
// Composition (simplex lattice) enumeration
// ---------------------------------------------------------------------

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// Number of weak compositions of `total` into `dim` parts.
fn composition_count(dim: usize, total: usize) -> Option<u128> {
    binomial((total + dim - 1) as u128, (dim - 1) as u128)
}

/// The composition of rank `rank` in ascending lexicographic order.
fn composition_unrank(dim: usize, total: usize, mut rank: u128) -> Vec<usize> {
    let mut c = vec![0usize; dim];
    let mut remaining = total;
    for i in 0..dim - 1 {
        for head in 0..=remaining {
            let tail = composition_count(dim - i - 1, remaining - head)
                .expect("composition count within u128");
            if rank < tail {
                c[i] = head;
                remaining -= head;
                break;
            }
            rank -= tail;
        }
    }
    c[dim - 1] = remaining;
    c
}

/// Advances `c` to its lexicographic successor in place; returns false
/// at the last composition `(total, 0, …, 0)`.
fn composition_next(c: &mut [usize]) -> bool {
    let r = match c.iter().rposition(|&x| x > 0) {
        Some(r) => r,
        None => return false, // total = 0: single composition
    };
    if r == 0 {
        return false;
    }
    let moved = c[r] - 1;
    c[r] = 0;
    c[r - 1] += 1;
    *c.last_mut().unwrap() += moved;
    true
}

fn composition_probs(c: &[usize], total: usize) -> Vec<f64> {
    c.iter().map(|&x| x as f64 / total as f64).collect()
}

// ---------------------------------------------------------------------
// Per-state slice space
// ---------------------------------------------------------------------

/// Geometry of one state's slice of the policy space.
struct SliceSpace {
    cells: usize,     // card_u · card_v
    steps_sum: usize, // grid_steps − 1
    n_uv: u128,       // lattice points over the (u,v) simplex
    x_base: u128,     // choices per cell: card_x or |lattice over x|
    n_x: u128,        // x_base^cells
    n_slice: u128,    // n_uv · n_x
}

impl SliceSpace {
    fn build(spec: &SearchSpec, card_x: usize) -> Result<Self> {
        spec.validate()?;
        let cells = spec.card_u * spec.card_v;
        let steps_sum = spec.grid_steps - 1;
        let over = || {
            Error::Size(format!(
                "search space exceeds the {POLICY_CAP}-policy cap"
            ))
        };
        let n_uv = composition_count(cells, steps_sum).ok_or_else(over)?;
        let x_base = if spec.deterministic_x {
            card_x as u128
        } else {
            composition_count(card_x, steps_sum).ok_or_else(over)?
        };
        let mut n_x: u128 = 1;
        for _ in 0..cells {
            n_x = n_x.checked_mul(x_base).ok_or_else(over)?;
        }
        let n_slice = n_uv.checked_mul(n_x).ok_or_else(over)?;
        Ok(SliceSpace {
            cells,
            steps_sum,
            n_uv,
            x_base,
            n_x,
            n_slice,
        })
    }

    /// Total enumerated policies across all states, enforcing the cap.
    fn total(&self, card_s: usize) -> Result<u128> {
        let mut total: u128 = 1;
        for _ in 0..card_s {
            total = total
                .checked_mul(self.n_slice)
                .filter(|&t| t <= POLICY_CAP)
                .ok_or_else(|| {
                    Error::Size(format!(
                        "search space exceeds the {POLICY_CAP}-policy cap"
                    ))
                })?;
        }
        Ok(total)
    }

    /// Decodes an x-assignment index into per-cell distributions over x.
    fn x_distributions(
        &self,
        spec: &SearchSpec,
        card_x: usize,
        mut x_idx: u128,
    ) -> Vec<Vec<f64>> {
        let mut digits = vec![0u128; self.cells];
        for d in (0..self.cells).rev() {
            digits[d] = x_idx % self.x_base;
            x_idx /= self.x_base;
        }
        digits
            .iter()
            .map(|&digit| {
                if spec.deterministic_x {
                    let mut row = vec![0.0; card_x];
                    row[digit as usize] = 1.0;
                    row
                } else {
                    let c = composition_unrank(card_x, self.steps_sum, digit);
                    composition_probs(&c, self.steps_sum)
                }
            })
            .collect()
    }
}

/// Evaluates the per-state objective `I(V;Y|U,S=s) − I(V;Z|U,S=s)` for
/// one slice: `w` is the distribution over `(u,v)` cells (u-major) and
/// `x_rows[cell]` the conditional over `x`.
fn slice_objective(
    ch: &DiscreteSDWC,
    spec: &SearchSpec,
    s: usize,
    w: &[f64],
    x_rows: &[Vec<f64>],
) -> Result<f64> {
    let t = JointTable::from_fn(
        vec![
            Axis::new("U", spec.card_u),
            Axis::new("V", spec.card_v),
            Axis::new("Y", ch.card_y()),
            Axis::new("Z", ch.card_z()),
        ],
        |idx| {
            let (u, v, y, z) = (idx[0], idx[1], idx[2], idx[3]);
            let cell = u * spec.card_v + v;
            let mut p = 0.0;
            for (x, px) in x_rows[cell].iter().enumerate() {
                if *px > 0.0 {
                    p += px * ch.law(x, s, y, z);
                }
            }
            w[cell] * p
        },
    )?;
    Ok(t.mutual_information_raw(&["V"], &["Y"], &["U"])?
        - t.mutual_information_raw(&["V"], &["Z"], &["U"])?)
}

/// Best (value, slice index) over one state's slice space, visiting
/// candidates in ascending slice-index order; ties keep the earliest.
fn best_slice(ch: &DiscreteSDWC, spec: &SearchSpec, space: &SliceSpace, s: usize) -> Result<(f64, u128)> {
    let n_chunks = (space.n_uv + CHUNK as u128 - 1) / CHUNK as u128;
    let scan_chunk = |chunk: u128| -> Result<(f64, u128)> {
        let lo = chunk * CHUNK as u128;
        let hi = (lo + CHUNK as u128).min(space.n_uv);
        let mut comp = composition_unrank(space.cells, space.steps_sum, lo);
        let mut best = (f64::NEG_INFINITY, u128::MAX);
        let mut uv_idx = lo;
        loop {
            let w = composition_probs(&comp, space.steps_sum);
            for x_idx in 0..space.n_x {
                let x_rows = space.x_distributions(spec, ch.card_x(), x_idx);
                let g = slice_objective(ch, spec, s, &w, &x_rows)?;
                if g > best.0 {
                    best = (g, uv_idx * space.n_x + x_idx);
                }
            }
            uv_idx += 1;
            if uv_idx >= hi || !composition_next(&mut comp) {
                break;
            }
        }
        Ok(best)
    };

    #[cfg(feature = "parallel")]
    let chunk_bests: Result<Vec<(f64, u128)>> = (0..n_chunks)
        .into_par_iter()
        .map(scan_chunk)
        .collect();
    #[cfg(not(feature = "parallel"))]
    let chunk_bests: Result<Vec<(f64, u128)>> = (0..n_chunks).map(scan_chunk).collect();

    // Ordered fold: strictly-greater replacement preserves the global
    // earliest-index tie-break regardless of how chunks were evaluated.
    let mut best = (f64::NEG_INFINITY, u128::MAX);
    for cb in chunk_bests? {
        if cb.0 > best.0 {
            best = cb;
        }
    }
    Ok(best)
}

/// Reassembles an [`AuxiliaryPolicy`] from per-state slice indices.
fn policy_from_slices(
    ch: &DiscreteSDWC,
    spec: &SearchSpec,
    space: &SliceSpace,
    slice_idx: &[u128],
) -> Result<AuxiliaryPolicy> {
    let mut uv_given_s = Vec::with_capacity(ch.card_s() * space.cells);
    let mut x_given_uvs = vec![0.0; space.cells * ch.card_s() * ch.card_x()];
    for (s, &idx) in slice_idx.iter().enumerate() {
        let uv_idx = idx / space.n_x;
        let x_idx = idx % space.n_x;
        let comp = composition_unrank(space.cells, space.steps_sum, uv_idx);
        uv_given_s.extend(composition_probs(&comp, space.steps_sum));
        let x_rows = space.x_distributions(spec, ch.card_x(), x_idx);
        for (cell, row) in x_rows.iter().enumerate() {
            for (x, &px) in row.iter().enumerate() {
                // x_given_uvs layout: [u][v][s][x] with cell = u·card_v + v.
                x_given_uvs[(cell * ch.card_s() + s) * ch.card_x() + x] = px;
            }
        }
    }
    AuxiliaryPolicy::new(
        spec.card_u,
        spec.card_v,
        ch.card_s(),
        ch.card_x(),
        uv_given_s,
        x_given_uvs,
    )
}

/// Grid-maximizes the secrecy objective `I(V;Y|U,S) − I(V;Z|U,S)` over
/// the policy space described by `spec`.
///
/// Returns the maximizing policy, the clamped objective value, and the
/// policy encoding. Ties are broken by the lexicographically smallest
/// encoding; when no policy attains a positive objective the reported
/// value is 0 and the all-ties convention returns encoding 0 (every
/// policy then attains the clamped maximum).
pub fn optimize_secrecy(ch: &DiscreteSDWC, spec: &SearchSpec) -> Result<OptimizeResult> {
    let space = SliceSpace::build(spec, ch.card_x())?;
    let enumerated = space.total(ch.card_s())?;
    let prior = ch.state_prior().probs().to_vec();

    let mut value = 0.0;
    let mut slices = Vec::with_capacity(ch.card_s());
    for s in 0..ch.card_s() {
        if prior[s] > 0.0 {
            let (g, idx) = best_slice(ch, spec, &space, s)?;
            value += prior[s] * g;
            slices.push(idx);
        } else {
            // Zero-prior states contribute nothing; lex-min tie-break
            // fixes their slice at index 0.
            slices.push(0);
        }
    }

    if !(value > 0.0) {
        // All policies tie at the clamped value 0; the lexicographically
        // smallest encoding is policy 0.
        let slices = vec![0u128; ch.card_s()];
        return Ok(OptimizeResult {
            policy: policy_from_slices(ch, spec, &space, &slices)?,
            value: 0.0,
            policy_id: 0,
            enumerated,
        });
    }

    let mut policy_id: u128 = 0;
    for &idx in &slices {
        policy_id = policy_id * space.n_slice + idx;
    }
    Ok(OptimizeResult {
        policy: policy_from_slices(ch, spec, &space, &slices)?,
        value,
        policy_id,
        enumerated,
    })
}

/// Like [`optimize_secrecy`], but additionally streams every enumerated
/// policy as a `(policy_id, clamped objective)` row to `sink`, in
/// ascending policy-id order.
pub fn optimize_secrecy_trace(
    ch: &DiscreteSDWC,
    spec: &SearchSpec,
    mut sink: impl FnMut(u128, f64),
) -> Result<OptimizeResult> {
    let result = optimize_secrecy(ch, spec)?;
    let space = SliceSpace::build(spec, ch.card_x())?;
    let prior = ch.state_prior().probs();

    // Cache per-slice objectives; with card_s ≥ 2 each slice space is at
    // most the square root of the policy cap, so these stay small. For a
    // single state the values are streamed without caching.
    if ch.card_s() == 1 {
        let mut comp = composition_unrank(space.cells, space.steps_sum, 0);
        let mut uv_idx: u128 = 0;
        loop {
            let w = composition_probs(&comp, space.steps_sum);
            for x_idx in 0..space.n_x {
                let x_rows = space.x_distributions(spec, ch.card_x(), x_idx);
                let g = slice_objective(ch, spec, 0, &w, &x_rows)?;
                sink(uv_idx * space.n_x + x_idx, (prior[0] * g).max(0.0));
            }
            uv_idx += 1;
            if uv_idx >= space.n_uv || !composition_next(&mut comp) {
                break;
            }
        }
        return Ok(result);
    }

    let mut per_slice: Vec<Vec<f64>> = Vec::with_capacity(ch.card_s());
    for s in 0..ch.card_s() {
        let mut vals = Vec::with_capacity(space.n_slice as usize);
        let mut comp = composition_unrank(space.cells, space.steps_sum, 0);
        loop {
            let w = composition_probs(&comp, space.steps_sum);
            for x_idx in 0..space.n_x {
                let x_rows = space.x_distributions(spec, ch.card_x(), x_idx);
                vals.push(slice_objective(ch, spec, s, &w, &x_rows)?);
            }
            if !composition_next(&mut comp) {
                break;
            }
        }
        per_slice.push(vals);
    }

    // Odometer over slice indices, state 0 most significant.
    let mut idx = vec![0usize; ch.card_s()];
    let mut id: u128 = 0;
    loop {
        let v: f64 = idx
            .iter()
            .enumerate()
            .map(|(s, &i)| prior[s] * per_slice[s][i])
            .sum();
        sink(id, v.max(0.0));
        id += 1;
        let mut carry = ch.card_s();
        while carry > 0 {
            idx[carry - 1] += 1;
            if idx[carry - 1] < space.n_slice as usize {
                break;
            }
            idx[carry - 1] = 0;
            carry -= 1;
        }
        if carry == 0 {
            break;
        }
    }
    Ok(result)
}

// ---------------------------------------------------------------------
// Binary closed forms
// ---------------------------------------------------------------------

/// Maps a crossover probability to the canonical range `[0, ½]` using
/// the symmetry `H(q) = H(1−q)`; values outside `[0,1]` are rejected.
fn canonical_crossover(n: f64, what: &str) -> Result<f64> {
    if !(0.0..=1.0).contains(&n) {
        return Err(Error::Domain(format!(
            "{what}={n} outside [0,1]; crossovers are canonicalized to [0,½]"
        )));
    }
    Ok(if n > 0.5 { 1.0 - n } else { n })
}

/// Secrecy capacity of the binary SD-WC: `[H(N₂) − H(N₁)]⁺` after
/// canonicalizing both crossovers to `[0, ½]`. Independent of the state
/// bias.
pub fn binary_capacity(n1: f64, n2: f64) -> Result<f64> {
    let n1 = canonical_crossover(n1, "n1")?;
    let n2 = canonical_crossover(n2, "n2")?;
    Ok((binary_entropy(n2)? - binary_entropy(n1)?).max(0.0))
}

/// The binary secrecy objective at input bias `p`:
/// `H(N₂) − H(N₁) − [H(p ∗ N₂) − H(p ∗ N₁)]` (unclamped).
pub fn binary_objective(p: f64, n1: f64, n2: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("input bias p={p} outside [0,1]")));
    }
    let n1 = canonical_crossover(n1, "n1")?;
    let n2 = canonical_crossover(n2, "n2")?;
    Ok(binary_entropy(n2)? - binary_entropy(n1)?
        - (binary_entropy(star(p, n2)?)? - binary_entropy(star(p, n1)?)?))
}

/// State-rate thresholds of the binary SD-WC for a concrete input
/// policy: `(I(S;Y), max{I(S;Y), I(X;S) − I(X;Z|S)})`. Superposition
/// coding requires the state rate at or below the first value; binning
/// requires it at or above the second.
pub fn binary_regime_thresholds(
    ch: &DiscreteSDWC,
    pol: &AuxiliaryPolicy,
) -> Result<(f64, f64)> {
    if ch.card_x() != 2 || ch.card_s() != 2 || ch.card_y() != 2 || ch.card_z() != 2 {
        return Err(Error::Validation(format!(
            "binary thresholds need a 2×2×2×2 channel, got {}×{}×{}×{}",
            ch.card_x(),
            ch.card_s(),
            ch.card_y(),
            ch.card_z()
        )));
    }
    let t = crate::channel::induced_joint(ch, pol)?;
    let i_sy = t.mutual_information_raw(&["S"], &["Y"], &[])?;
    let binning = t.mutual_information_raw(&["X"], &["S"], &[])?
        - t.mutual_information_raw(&["X"], &["Z"], &["S"])?;
    Ok((i_sy, i_sy.max(binning)))
}
