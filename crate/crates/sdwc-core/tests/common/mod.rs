//! Shared test-side oracles, kept deliberately independent of the
//! production code paths they check.
//!
//! The Gaussian oracle computes conditional differential entropies as
//! determinant ratios of the full five-variable covariance matrix via
//! LU elimination, whereas the production module evaluates hand-reduced
//! per-term closed forms. The discrete oracle builds the six-variable
//! joint with naive nested loops and measures information quantities as
//! plain entropy sums over hash-map marginals, whereas production code
//! uses strided tables and a per-cell log-ratio accumulation.

#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::{E, PI};

use rand::Rng;
use sdwc_core::{AuxiliaryPolicy, DiscreteSDWC, ProbVector};

// ---------------------------------------------------------------------------
// Gaussian determinant-ratio oracle
// ---------------------------------------------------------------------------

/// Variable order of [`dpc_covariance`].
pub const GV: usize = 0;
pub const GU: usize = 1;
pub const GS: usize = 2;
pub const GY: usize = 3;
pub const GZ: usize = 4;

/// Covariance of (V, U, S, Y, Z) for the dirty-paper construction,
/// assembled from the independent components (X₁, X₂, S, η₁, η₂).
pub fn dpc_covariance(
    p: f64,
    q: f64,
    n1: f64,
    n2: f64,
    alpha: f64,
    beta: f64,
    l1: f64,
    l2: f64,
) -> [[f64; 5]; 5] {
    let a = alpha * (1.0 - beta) * p;
    let b = alpha * beta * p;
    let k = if q > 0.0 {
        ((1.0 - alpha) * p / q).sqrt()
    } else {
        0.0
    };
    let kappa = k + 1.0;
    let loads = [
        [1.0, 0.0, l1, 0.0, 0.0],       // V = X₁ + λ₁S
        [0.0, 1.0, l2, 0.0, 0.0],       // U = X₂ + λ₂S
        [0.0, 0.0, 1.0, 0.0, 0.0],      // S
        [1.0, 1.0, kappa, 1.0, 0.0],    // Y = X₁ + X₂ + (K+1)S + η₁
        [1.0, 1.0, kappa, 0.0, 1.0],    // Z = X₁ + X₂ + (K+1)S + η₂
    ];
    let comp_var = [a, b, q, n1, n2];
    let mut sigma = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            sigma[i][j] = (0..5).map(|c| loads[i][c] * loads[j][c] * comp_var[c]).sum();
        }
    }
    sigma
}

/// Determinant by LU elimination with partial pivoting.
pub fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[pivot][col].abs() == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    det
}

fn submatrix(sigma: &[[f64; 5]; 5], idx: &[usize]) -> Vec<Vec<f64>> {
    idx.iter()
        .map(|&i| idx.iter().map(|&j| sigma[i][j]).collect())
        .collect()
}

/// Conditional differential entropy in bits:
/// `H(G|C) = ½·log₂((2πe)^|G| · det Σ_{G∪C} / det Σ_C)`.
pub fn cond_entropy_bits(sigma: &[[f64; 5]; 5], group: &[usize], cond: &[usize]) -> f64 {
    if group.is_empty() {
        return 0.0;
    }
    let joint: Vec<usize> = group.iter().chain(cond.iter()).copied().collect();
    let det_joint = determinant(submatrix(sigma, &joint));
    let det_cond = if cond.is_empty() {
        1.0
    } else {
        determinant(submatrix(sigma, cond))
    };
    0.5 * ((2.0 * PI * E).powi(group.len() as i32) * det_joint / det_cond).log2()
}

// ---------------------------------------------------------------------------
// Naive discrete joint-distribution oracle
// ---------------------------------------------------------------------------

/// Axis order of [`naive_joint`]: (S, U, V, X, Y, Z).
pub const DS: usize = 0;
pub const DU: usize = 1;
pub const DV: usize = 2;
pub const DX: usize = 3;
pub const DY: usize = 4;
pub const DZ: usize = 5;

/// A dense joint distribution with explicit nested-loop construction.
pub struct NaiveJoint {
    pub dims: Vec<usize>,
    pub p: Vec<f64>,
}

impl NaiveJoint {
    /// p(s,u,v,x,y,z) = P(s)·P(u,v|s)·P(x|u,v,s)·p(y,z|x,s).
    pub fn build(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Self {
        let dims = vec![
            ch.card_s(),
            pol.card_u(),
            pol.card_v(),
            ch.card_x(),
            ch.card_y(),
            ch.card_z(),
        ];
        let mut p = Vec::with_capacity(dims.iter().product());
        for s in 0..dims[DS] {
            for u in 0..dims[DU] {
                for v in 0..dims[DV] {
                    for x in 0..dims[DX] {
                        for y in 0..dims[DY] {
                            for z in 0..dims[DZ] {
                                p.push(
                                    ch.state_prior().probs()[s]
                                        * pol.uv(s, u, v)
                                        * pol.x(u, v, s, x)
                                        * ch.law(x, s, y, z),
                                );
                            }
                        }
                    }
                }
            }
        }
        Self { dims, p }
    }

    /// Shannon entropy in bits of the marginal over `axes`.
    pub fn entropy_of(&self, axes: &[usize]) -> f64 {
        let mut marginal: HashMap<Vec<usize>, f64> = HashMap::new();
        let mut idx = vec![0usize; self.dims.len()];
        for (cell, &mass) in self.p.iter().enumerate() {
            let mut rem = cell;
            for ax in (0..self.dims.len()).rev() {
                idx[ax] = rem % self.dims[ax];
                rem /= self.dims[ax];
            }
            let key: Vec<usize> = axes.iter().map(|&a| idx[a]).collect();
            *marginal.entry(key).or_insert(0.0) += mass;
        }
        -marginal
            .values()
            .filter(|&&m| m > 0.0)
            .map(|&m| m * m.log2())
            .sum::<f64>()
    }

    /// Conditional mutual information in bits:
    /// `I(A;B|C) = H(A,C) + H(B,C) − H(A,B,C) − H(C)`.
    pub fn mi(&self, a: &[usize], b: &[usize], cond: &[usize]) -> f64 {
        let ac: Vec<usize> = a.iter().chain(cond).copied().collect();
        let bc: Vec<usize> = b.iter().chain(cond).copied().collect();
        let abc: Vec<usize> = a.iter().chain(b).chain(cond).copied().collect();
        self.entropy_of(&ac) + self.entropy_of(&bc) - self.entropy_of(&abc)
            - self.entropy_of(cond)
    }

    /// Conditional entropy in bits: `H(A|C) = H(A,C) − H(C)`.
    pub fn cond_entropy(&self, a: &[usize], cond: &[usize]) -> f64 {
        let ac: Vec<usize> = a.iter().chain(cond).copied().collect();
        self.entropy_of(&ac) - self.entropy_of(cond)
    }
}

// ---------------------------------------------------------------------------
// Randomized instance generators for property tests
// ---------------------------------------------------------------------------

pub fn random_row<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.gen_range(0.05..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / sum).collect()
}

/// A fully random channel with the given alphabet sizes.
pub fn random_channel<R: Rng>(
    rng: &mut R,
    card_x: usize,
    card_s: usize,
    card_y: usize,
    card_z: usize,
) -> DiscreteSDWC {
    let prior = ProbVector::new(random_row(rng, card_s)).unwrap();
    let mut law = Vec::with_capacity(card_x * card_s * card_y * card_z);
    for _ in 0..card_x * card_s {
        law.extend(random_row(rng, card_y * card_z));
    }
    DiscreteSDWC::new(card_x, card_s, card_y, card_z, prior, law).unwrap()
}

/// A random channel in which Z is physically degraded from Y:
/// `p(y,z|x,s) = p(y|x,s)·p(z|y)`.
pub fn random_degraded_channel<R: Rng>(
    rng: &mut R,
    card_x: usize,
    card_s: usize,
    card_y: usize,
    card_z: usize,
) -> DiscreteSDWC {
    let prior = ProbVector::new(random_row(rng, card_s)).unwrap();
    let z_given_y: Vec<Vec<f64>> = (0..card_y).map(|_| random_row(rng, card_z)).collect();
    let mut law = Vec::with_capacity(card_x * card_s * card_y * card_z);
    for _ in 0..card_x * card_s {
        let y_row = random_row(rng, card_y);
        for (y, &py) in y_row.iter().enumerate() {
            for z in 0..card_z {
                law.push(py * z_given_y[y][z]);
            }
        }
    }
    DiscreteSDWC::new(card_x, card_s, card_y, card_z, prior, law).unwrap()
}

/// A fully random auxiliary policy compatible with the channel.
pub fn random_policy<R: Rng>(
    rng: &mut R,
    card_u: usize,
    card_v: usize,
    card_s: usize,
    card_x: usize,
) -> AuxiliaryPolicy {
    let mut uv = Vec::with_capacity(card_s * card_u * card_v);
    for _ in 0..card_s {
        uv.extend(random_row(rng, card_u * card_v));
    }
    let mut xg = Vec::with_capacity(card_u * card_v * card_s * card_x);
    for _ in 0..card_u * card_v * card_s {
        xg.extend(random_row(rng, card_x));
    }
    AuxiliaryPolicy::new(card_u, card_v, card_s, card_x, uv, xg).unwrap()
}
