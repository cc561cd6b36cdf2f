//! Finite-alphabet probability tables and exact information measures.
//!
//! Everything downstream — region evaluators, the policy optimizer, the
//! simulator diagnostics — reduces to entropies and conditional mutual
//! informations computed on a dense [`JointTable`] over named axes.
//! All logarithms are base 2; every rate in this crate is bits per
//! channel use. `0 · log 0 = 0` by continuity throughout.

use crate::error::{Error, Result};

/// Default cap on the number of cells in a dense table.
pub const DEFAULT_MAX_CELLS: usize = 10_000_000;

/// Environment variable overriding [`DEFAULT_MAX_CELLS`].
pub const MAX_CELLS_ENV: &str = "SDWC_MAX_CELLS";

/// Current cap on dense-table cells (env override or default).
pub fn max_cells() -> usize {
    std::env::var(MAX_CELLS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_CELLS)
}

/// Absolute tolerance for "sums to one" checks.
pub(crate) const MASS_TOL: f64 = 1e-12;

/// `log2(x)` with the `0 log 0` convention handled by callers (never call
/// with a negative argument).
#[inline]
fn plog2p(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy in bits of a nonnegative slice (need not be validated;
/// used internally on slices that are valid by construction).
pub(crate) fn entropy_slice(probs: &[f64]) -> f64 {
    -probs.iter().copied().map(plog2p).sum::<f64>()
}

/// Binary entropy without domain checks, for internal use on values that
/// are probabilities by construction.
#[inline]
pub(crate) fn h2(q: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&q));
    -plog2p(q) - plog2p(1.0 - q)
}

/// A validated probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    /// Validates non-negativity and unit mass (within `1e-12`).
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Validation("probability vector is empty".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Validation(format!(
                "probability vector has invalid entry {p}"
            )));
        }
        let mass: f64 = probs.iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::Validation(format!(
                "probability vector mass {mass} is not 1 within {MASS_TOL}"
            )));
        }
        Ok(Self { probs })
    }

    /// Uniform distribution on `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("uniform distribution over 0 outcomes".into()));
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// Bernoulli distribution as `[1-p, p]` (outcome 1 has probability `p`).
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("Bernoulli parameter {p} outside [0,1]")));
        }
        Ok(Self {
            probs: vec![1.0 - p, p],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Shannon entropy of a distribution, in bits. Lies in `[0, log2 |p|]`.
pub fn entropy(p: &ProbVector) -> f64 {
    entropy_slice(p.probs())
}

/// Binary entropy function `H(q) = -q log2 q - (1-q) log2 (1-q)`.
pub fn binary_entropy(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!("binary entropy argument {q} outside [0,1]")));
    }
    Ok(h2(q))
}

/// Crossover of cascaded binary symmetric flips:
/// `star(p, u) = p(1-u) + (1-p)u`.
pub fn star(p: f64, u: f64) -> Result<f64> {
    for (name, v) in [("p", p), ("u", u)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!("star argument {name}={v} outside [0,1]")));
        }
    }
    Ok(p * (1.0 - u) + (1.0 - p) * u)
}

/// AWGN capacity function `C(x) = 1/2 log2(1 + x)` for an SNR `x >= 0`.
pub fn awgn_capacity(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("SNR {x} is negative or non-finite")));
    }
    Ok(0.5 * (1.0 + x).log2())
}

/// A named axis of a joint table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axis {
    pub name: String,
    pub card: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, card: usize) -> Self {
        Self {
            name: name.into(),
            card,
        }
    }
}

/// Dense joint probability table over named finite axes, row-major in the
/// axis order given at construction.
///
/// Cell count is capped at [`max_cells`] so exhaustive computations stay
/// tractable; the cap is a size error, not a panic.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    axes: Vec<Axis>,
    values: Vec<f64>,
}

impl JointTable {
    /// Validates axis sanity, the cell cap, non-negativity and unit mass.
    pub fn new(axes: Vec<Axis>, values: Vec<f64>) -> Result<Self> {
        let cells = Self::checked_cells(&axes)?;
        if values.len() != cells {
            return Err(Error::Validation(format!(
                "table has {} values but axes imply {cells}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Validation(format!("table has invalid entry {v}")));
        }
        let mass: f64 = values.iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::Validation(format!(
                "table mass {mass} is not 1 within {MASS_TOL}"
            )));
        }
        Ok(Self { axes, values })
    }

    /// Builds a table by evaluating `f` on every multi-index.
    pub fn from_fn(axes: Vec<Axis>, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let cells = Self::checked_cells(&axes)?;
        let mut idx = vec![0usize; axes.len()];
        let mut values = Vec::with_capacity(cells);
        for _ in 0..cells {
            values.push(f(&idx));
            Self::advance(&axes, &mut idx);
        }
        Self::new(axes, values)
    }

    fn checked_cells(axes: &[Axis]) -> Result<usize> {
        if axes.is_empty() {
            return Err(Error::Validation("table needs at least one axis".into()));
        }
        let mut names: Vec<&str> = axes.iter().map(|a| a.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("duplicate axis name".into()));
        }
        if let Some(a) = axes.iter().find(|a| a.card == 0) {
            return Err(Error::Validation(format!("axis {} has cardinality 0", a.name)));
        }
        let mut cells = 1usize;
        for a in axes {
            cells = cells
                .checked_mul(a.card)
                .filter(|&c| c <= max_cells())
                .ok_or_else(|| {
                    Error::Size(format!(
                        "table exceeds the {} cell cap (override with {})",
                        max_cells(),
                        MAX_CELLS_ENV
                    ))
                })?;
        }
        Ok(cells)
    }

    /// Odometer increment of a multi-index (last axis fastest).
    fn advance(axes: &[Axis], idx: &mut [usize]) {
        for pos in (0..axes.len()).rev() {
            idx[pos] += 1;
            if idx[pos] < axes[pos].card {
                return;
            }
            idx[pos] = 0;
        }
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Position of a named axis.
    fn axis_pos(&self, name: &str) -> Result<usize> {
        self.axes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Validation(format!("unknown axis {name}")))
    }

    /// Linear offset of a full multi-index.
    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.axes.len());
        let mut off = 0usize;
        for (pos, a) in self.axes.iter().enumerate() {
            debug_assert!(idx[pos] < a.card);
            off = off * a.card + idx[pos];
        }
        off
    }

    /// Marginal table over the named axes (kept in this table's axis order).
    pub fn marginal(&self, keep: &[&str]) -> Result<JointTable> {
        let positions = self.group_positions(keep)?;
        if positions.len() == self.axes.len() {
            return Ok(self.clone());
        }
        let kept: Vec<Axis> = positions.iter().map(|&p| self.axes[p].clone()).collect();
        let cells: usize = kept.iter().map(|a| a.card).product();
        let strides = self.strides_into(&positions, &kept);
        let mut values = vec![0.0f64; cells];
        let mut idx = vec![0usize; self.axes.len()];
        for &v in &self.values {
            let mut off = 0usize;
            for (pos, &d) in idx.iter().enumerate() {
                off += strides[pos] * d;
            }
            values[off] += v;
            Self::advance(&self.axes, &mut idx);
        }
        // Bypass `new` mass validation: marginalization preserves mass exactly
        // up to summation round-off already admitted by MASS_TOL.
        Ok(JointTable { axes: kept, values })
    }

    /// For each source axis position, the stride it contributes to offsets
    /// in a destination table holding `dest_axes` (source axes not present
    /// contribute stride 0).
    fn strides_into(&self, positions: &[usize], dest_axes: &[Axis]) -> Vec<usize> {
        let mut dest_strides = vec![0usize; dest_axes.len()];
        let mut s = 1usize;
        for (k, a) in dest_axes.iter().enumerate().rev() {
            dest_strides[k] = s;
            s *= a.card;
        }
        let mut strides = vec![0usize; self.axes.len()];
        for (k, &p) in positions.iter().enumerate() {
            strides[p] = dest_strides[k];
        }
        strides
    }

    /// Validates a group of axis names and returns their positions in
    /// table order.
    fn group_positions(&self, group: &[&str]) -> Result<Vec<usize>> {
        let mut positions: Vec<usize> = group
            .iter()
            .map(|n| self.axis_pos(n))
            .collect::<Result<_>>()?;
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("axis group has repeated axes".into()));
        }
        Ok(positions)
    }

    /// Joint entropy `H(group)` in bits.
    pub fn entropy_of(&self, group: &[&str]) -> Result<f64> {
        Ok(entropy_slice(self.marginal(group)?.values()))
    }

    /// Conditional entropy `H(group | given) = H(group, given) - H(given)`.
    pub fn conditional_entropy(&self, group: &[&str], given: &[&str]) -> Result<f64> {
        self.check_disjoint(&[group, given])?;
        let joint: Vec<&str> = group.iter().chain(given.iter()).copied().collect();
        if given.is_empty() {
            return self.entropy_of(group);
        }
        Ok(self.entropy_of(&joint)? - self.entropy_of(given)?)
    }

    fn check_disjoint(&self, groups: &[&[&str]]) -> Result<()> {
        let mut all: Vec<&str> = groups.iter().flat_map(|g| g.iter().copied()).collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "axis groups overlap: {}",
                all.join(",")
            )));
        }
        Ok(())
    }

    /// Conditional mutual information `I(A;B|C)` in bits, clamped to 0 at
    /// the public boundary (round-off may produce values down to -1e-12).
    pub fn mutual_information(&self, a: &[&str], b: &[&str], cond: &[&str]) -> Result<f64> {
        Ok(self.mutual_information_raw(a, b, cond)?.max(0.0))
    }

    /// Unclamped `I(A;B|C)`; exact chain-rule identities hold on this value
    /// and the optimizer consumes it for diagnostics.
    ///
    /// Computed as `Σ p(a,b,c) log2[ p(a,b,c) p(c) / (p(a,c) p(b,c)) ]` with
    /// zero-probability events contributing 0.
    pub fn mutual_information_raw(&self, a: &[&str], b: &[&str], cond: &[&str]) -> Result<f64> {
        self.check_disjoint(&[a, b, cond])?;
        let union: Vec<&str> = a.iter().chain(b.iter()).chain(cond.iter()).copied().collect();
        let abc = self.marginal(&union)?;

        // Names resolved against the reduced table from here on.
        let ac: Vec<&str> = a.iter().chain(cond.iter()).copied().collect();
        let bc: Vec<&str> = b.iter().chain(cond.iter()).copied().collect();
        let ac_pos = abc.group_positions(&ac)?;
        let bc_pos = abc.group_positions(&bc)?;
        let c_pos = abc.group_positions(cond)?;

        let ac_axes: Vec<Axis> = ac_pos.iter().map(|&p| abc.axes[p].clone()).collect();
        let bc_axes: Vec<Axis> = bc_pos.iter().map(|&p| abc.axes[p].clone()).collect();
        let c_axes: Vec<Axis> = c_pos.iter().map(|&p| abc.axes[p].clone()).collect();

        let ac_table = abc.marginal(&ac)?;
        let bc_table = abc.marginal(&bc)?;
        let c_table = if cond.is_empty() {
            None
        } else {
            Some(abc.marginal(cond)?)
        };

        let ac_strides = abc.strides_into(&ac_pos, &ac_axes);
        let bc_strides = abc.strides_into(&bc_pos, &bc_axes);
        let c_strides = abc.strides_into(&c_pos, &c_axes);

        let mut sum = 0.0f64;
        let mut idx = vec![0usize; abc.axes.len()];
        for &p in &abc.values {
            if p > 0.0 {
                let (mut off_ac, mut off_bc, mut off_c) = (0usize, 0usize, 0usize);
                for (pos, &d) in idx.iter().enumerate() {
                    off_ac += ac_strides[pos] * d;
                    off_bc += bc_strides[pos] * d;
                    off_c += c_strides[pos] * d;
                }
                let p_ac = ac_table.values[off_ac];
                let p_bc = bc_table.values[off_bc];
                let p_c = c_table.as_ref().map_or(1.0, |t| t.values[off_c]);
                sum += p * ((p * p_c) / (p_ac * p_bc)).log2();
            }
            Self::advance(&abc.axes, &mut idx);
        }
        Ok(sum)
    }
}
