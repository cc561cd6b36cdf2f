//! The discrete state-dependent wiretap channel (SD-WC) and the auxiliary
//! coding policies evaluated against it.
//!
//! A channel is a state prior `P(s)` and a memoryless law `p(y,z|x,s)`;
//! its n-fold extension is the product law, which is what the simulator
//! realizes sample-by-sample. A policy supplies the auxiliary layers
//! `P(u,v|s)` and `P(x|u,v,s)`: `U` is the common (decodable) layer, `V`
//! the confidential layer binned against the state.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::info::{Axis, JointTable, ProbVector, MASS_TOL};

/// Tolerance under which a conditional slice read from external JSON is
/// silently re-normalized; anything further off is rejected.
const RENORM_TOL: f64 = 1e-9;

fn validate_slice(slice: &mut [f64], what: &str, renormalize: bool) -> Result<()> {
    if let Some(v) = slice.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::Validation(format!("{what} has invalid entry {v}")));
    }
    let mass: f64 = slice.iter().sum();
    let tol = if renormalize { RENORM_TOL } else { MASS_TOL };
    if (mass - 1.0).abs() > tol {
        return Err(Error::Validation(format!(
            "{what} sums to {mass}, not 1 within {tol}"
        )));
    }
    if renormalize && mass != 1.0 {
        for v in slice.iter_mut() {
            *v /= mass;
        }
    }
    Ok(())
}

/// Discrete memoryless SD-WC: state prior and law `p(y,z|x,s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSDWC {
    card_x: usize,
    card_s: usize,
    card_y: usize,
    card_z: usize,
    state_prior: ProbVector,
    /// Law stored flat as `[x][s][y][z]`.
    law: Vec<f64>,
}

impl DiscreteSDWC {
    pub fn new(
        card_x: usize,
        card_s: usize,
        card_y: usize,
        card_z: usize,
        state_prior: ProbVector,
        mut law: Vec<f64>,
    ) -> Result<Self> {
        for (name, card) in [
            ("card_x", card_x),
            ("card_s", card_s),
            ("card_y", card_y),
            ("card_z", card_z),
        ] {
            if card == 0 {
                return Err(Error::Validation(format!("{name} must be positive")));
            }
        }
        if state_prior.len() != card_s {
            return Err(Error::Validation(format!(
                "state_prior has {} entries, expected card_s={card_s}",
                state_prior.len()
            )));
        }
        let expect = card_x * card_s * card_y * card_z;
        if law.len() != expect {
            return Err(Error::Validation(format!(
                "law has {} entries, expected {expect}",
                law.len()
            )));
        }
        let slice_len = card_y * card_z;
        for x in 0..card_x {
            for s in 0..card_s {
                let base = (x * card_s + s) * slice_len;
                validate_slice(
                    &mut law[base..base + slice_len],
                    &format!("law slice p(y,z|x={x},s={s})"),
                    false,
                )?;
            }
        }
        Ok(Self {
            card_x,
            card_s,
            card_y,
            card_z,
            state_prior,
            law,
        })
    }

    /// The binary XOR channel: `Y = X ⊕ S ⊕ η₁`, `Z = X ⊕ S ⊕ η₂` with
    /// `η₁ ~ B(n1)`, `η₂ ~ B(n2)` independent, `S ~ B(q)`.
    pub fn binary(n1: f64, n2: f64, q: f64) -> Result<Self> {
        for (name, v) in [("n1", n1), ("n2", n2), ("q", q)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("{name}={v} outside [0,1]")));
            }
        }
        let mut law = Vec::with_capacity(16);
        for x in 0..2usize {
            for s in 0..2usize {
                for y in 0..2usize {
                    for z in 0..2usize {
                        let e1 = y ^ x ^ s;
                        let e2 = z ^ x ^ s;
                        let p1 = if e1 == 1 { n1 } else { 1.0 - n1 };
                        let p2 = if e2 == 1 { n2 } else { 1.0 - n2 };
                        law.push(p1 * p2);
                    }
                }
            }
        }
        Self::new(2, 2, 2, 2, ProbVector::bernoulli(q)?, law)
    }

    /// Strict-schema JSON ingestion. Probabilities off by less than `1e-9`
    /// are re-normalized; anything further off is rejected.
    pub fn from_json_str(doc: &str) -> Result<Self> {
        let doc: ChannelDoc =
            serde_json::from_str(doc).map_err(|e| Error::Validation(format!("channel JSON: {e}")))?;
        doc.build()
    }

    pub fn card_x(&self) -> usize {
        self.card_x
    }
    pub fn card_s(&self) -> usize {
        self.card_s
    }
    pub fn card_y(&self) -> usize {
        self.card_y
    }
    pub fn card_z(&self) -> usize {
        self.card_z
    }
    pub fn state_prior(&self) -> &ProbVector {
        &self.state_prior
    }

    /// `p(y,z|x,s)`.
    #[inline]
    pub fn law(&self, x: usize, s: usize, y: usize, z: usize) -> f64 {
        self.law[((x * self.card_s + s) * self.card_y + y) * self.card_z + z]
    }

    /// Output marginal `p(y|x,s)`.
    pub fn law_y(&self, x: usize, s: usize, y: usize) -> f64 {
        (0..self.card_z).map(|z| self.law(x, s, y, z)).sum()
    }

    /// Eavesdropper marginal `p(z|x,s)`.
    pub fn law_z(&self, x: usize, s: usize, z: usize) -> f64 {
        (0..self.card_y).map(|y| self.law(x, s, y, z)).sum()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelDoc {
    card_x: usize,
    card_s: usize,
    card_y: usize,
    card_z: usize,
    state_prior: Vec<f64>,
    /// Nested `law[x][s][y][z]` (y-major within each `(x,s)` block).
    law: Vec<Vec<Vec<Vec<f64>>>>,
}

impl ChannelDoc {
    fn build(self) -> Result<DiscreteSDWC> {
        let mut prior = self.state_prior;
        if prior.len() != self.card_s {
            return Err(Error::Validation(format!(
                "state_prior has {} entries, expected card_s={}",
                prior.len(),
                self.card_s
            )));
        }
        validate_slice(&mut prior, "state_prior", true)?;

        if self.law.len() != self.card_x {
            return Err(Error::Validation(format!(
                "law has {} input slices, expected card_x={}",
                self.law.len(),
                self.card_x
            )));
        }
        let mut flat = Vec::with_capacity(self.card_x * self.card_s * self.card_y * self.card_z);
        for (x, per_s) in self.law.iter().enumerate() {
            if per_s.len() != self.card_s {
                return Err(Error::Validation(format!(
                    "law[{x}] has {} state slices, expected card_s={}",
                    per_s.len(),
                    self.card_s
                )));
            }
            for (s, rows) in per_s.iter().enumerate() {
                if rows.len() != self.card_y {
                    return Err(Error::Validation(format!(
                        "law[{x}][{s}] has {} rows, expected card_y={}",
                        rows.len(),
                        self.card_y
                    )));
                }
                let mut slice = Vec::with_capacity(self.card_y * self.card_z);
                for (y, row) in rows.iter().enumerate() {
                    if row.len() != self.card_z {
                        return Err(Error::Validation(format!(
                            "law[{x}][{s}][{y}] has {} entries, expected card_z={}",
                            row.len(),
                            self.card_z
                        )));
                    }
                    slice.extend_from_slice(row);
                }
                validate_slice(&mut slice, &format!("law slice p(y,z|x={x},s={s})"), true)?;
                flat.extend_from_slice(&slice);
            }
        }
        DiscreteSDWC::new(
            self.card_x,
            self.card_s,
            self.card_y,
            self.card_z,
            ProbVector::new(prior)?,
            flat,
        )
    }
}

/// Auxiliary coding policy: `P(u,v|s)` and `P(x|u,v,s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryPolicy {
    card_u: usize,
    card_v: usize,
    card_s: usize,
    card_x: usize,
    /// Flat `[s][u][v]`.
    uv_given_s: Vec<f64>,
    /// Flat `[u][v][s][x]`.
    x_given_uvs: Vec<f64>,
}

impl AuxiliaryPolicy {
    pub fn new(
        card_u: usize,
        card_v: usize,
        card_s: usize,
        card_x: usize,
        mut uv_given_s: Vec<f64>,
        mut x_given_uvs: Vec<f64>,
    ) -> Result<Self> {
        for (name, card) in [
            ("card_u", card_u),
            ("card_v", card_v),
            ("card_s", card_s),
            ("card_x", card_x),
        ] {
            if card == 0 {
                return Err(Error::Validation(format!("{name} must be positive")));
            }
        }
        if uv_given_s.len() != card_s * card_u * card_v {
            return Err(Error::Validation(format!(
                "uv_given_s has {} entries, expected {}",
                uv_given_s.len(),
                card_s * card_u * card_v
            )));
        }
        if x_given_uvs.len() != card_u * card_v * card_s * card_x {
            return Err(Error::Validation(format!(
                "x_given_uvs has {} entries, expected {}",
                x_given_uvs.len(),
                card_u * card_v * card_s * card_x
            )));
        }
        let uv = card_u * card_v;
        for s in 0..card_s {
            validate_slice(
                &mut uv_given_s[s * uv..(s + 1) * uv],
                &format!("P(u,v|s={s})"),
                false,
            )?;
        }
        for u in 0..card_u {
            for v in 0..card_v {
                for s in 0..card_s {
                    let base = ((u * card_v + v) * card_s + s) * card_x;
                    validate_slice(
                        &mut x_given_uvs[base..base + card_x],
                        &format!("P(x|u={u},v={v},s={s})"),
                        false,
                    )?;
                }
            }
        }
        Ok(Self {
            card_u,
            card_v,
            card_s,
            card_x,
            uv_given_s,
            x_given_uvs,
        })
    }

    /// Policy with degenerate `U`, `V = X` drawn from `x_dist` independent
    /// of the state — the single-layer input policy used throughout the
    /// binary analysis.
    pub fn v_equals_x(card_s: usize, x_dist: &ProbVector) -> Result<Self> {
        let card_x = x_dist.len();
        let mut uv_given_s = Vec::with_capacity(card_s * card_x);
        for _s in 0..card_s {
            uv_given_s.extend_from_slice(x_dist.probs());
        }
        let mut x_given_uvs = vec![0.0; card_x * card_s * card_x];
        for v in 0..card_x {
            for s in 0..card_s {
                x_given_uvs[(v * card_s + s) * card_x + v] = 1.0;
            }
        }
        Self::new(1, card_x, card_s, card_x, uv_given_s, x_given_uvs)
    }

    /// Strict-schema JSON ingestion of a single policy.
    pub fn from_json_str(doc: &str) -> Result<Self> {
        let doc: PolicyDoc =
            serde_json::from_str(doc).map_err(|e| Error::Validation(format!("policy JSON: {e}")))?;
        doc.build()
    }

    /// JSON ingestion of either a single policy object or an array of them.
    pub fn list_from_json_str(doc: &str) -> Result<Vec<Self>> {
        let doc: PolicyListDoc =
            serde_json::from_str(doc).map_err(|e| Error::Validation(format!("policy JSON: {e}")))?;
        match doc {
            PolicyListDoc::One(p) => Ok(vec![p.build()?]),
            PolicyListDoc::Many(ps) => ps.into_iter().map(|p| p.build()).collect(),
        }
    }

    pub fn card_u(&self) -> usize {
        self.card_u
    }
    pub fn card_v(&self) -> usize {
        self.card_v
    }
    pub fn card_s(&self) -> usize {
        self.card_s
    }
    pub fn card_x(&self) -> usize {
        self.card_x
    }

    /// `P(u,v|s)`.
    #[inline]
    pub fn uv(&self, s: usize, u: usize, v: usize) -> f64 {
        self.uv_given_s[(s * self.card_u + u) * self.card_v + v]
    }

    /// `P(x|u,v,s)`.
    #[inline]
    pub fn x(&self, u: usize, v: usize, s: usize, x: usize) -> f64 {
        self.x_given_uvs[((u * self.card_v + v) * self.card_s + s) * self.card_x + x]
    }

    /// The input conditional `P(x|s) = Σ_{u,v} P(u,v|s) P(x|u,v,s)` this
    /// policy induces, one distribution per state.
    pub fn induced_input(&self) -> Result<Vec<ProbVector>> {
        let mut out = Vec::with_capacity(self.card_s);
        for s in 0..self.card_s {
            let mut px = vec![0.0; self.card_x];
            for u in 0..self.card_u {
                for v in 0..self.card_v {
                    let w = self.uv(s, u, v);
                    for (x, px_x) in px.iter_mut().enumerate() {
                        *px_x += w * self.x(u, v, s, x);
                    }
                }
            }
            out.push(ProbVector::new(px)?);
        }
        Ok(out)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolicyDoc {
    card_u: usize,
    card_v: usize,
    /// Nested `uv_given_s[s][u][v]`.
    uv_given_s: Vec<Vec<Vec<f64>>>,
    /// Nested `x_given_uvs[u][v][s][x]`.
    x_given_uvs: Vec<Vec<Vec<Vec<f64>>>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolicyListDoc {
    One(PolicyDoc),
    Many(Vec<PolicyDoc>),
}

impl PolicyDoc {
    fn build(self) -> Result<AuxiliaryPolicy> {
        let card_s = self.uv_given_s.len();
        if card_s == 0 {
            return Err(Error::Validation("uv_given_s has no state slices".into()));
        }
        let mut uv_flat = Vec::new();
        for (s, per_u) in self.uv_given_s.iter().enumerate() {
            if per_u.len() != self.card_u {
                return Err(Error::Validation(format!(
                    "uv_given_s[{s}] has {} rows, expected card_u={}",
                    per_u.len(),
                    self.card_u
                )));
            }
            let mut slice = Vec::with_capacity(self.card_u * self.card_v);
            for (u, row) in per_u.iter().enumerate() {
                if row.len() != self.card_v {
                    return Err(Error::Validation(format!(
                        "uv_given_s[{s}][{u}] has {} entries, expected card_v={}",
                        row.len(),
                        self.card_v
                    )));
                }
                slice.extend_from_slice(row);
            }
            validate_slice(&mut slice, &format!("P(u,v|s={s})"), true)?;
            uv_flat.extend_from_slice(&slice);
        }

        if self.x_given_uvs.len() != self.card_u {
            return Err(Error::Validation(format!(
                "x_given_uvs has {} u-slices, expected card_u={}",
                self.x_given_uvs.len(),
                self.card_u
            )));
        }
        let mut card_x = None;
        let mut x_flat = Vec::new();
        for (u, per_v) in self.x_given_uvs.iter().enumerate() {
            if per_v.len() != self.card_v {
                return Err(Error::Validation(format!(
                    "x_given_uvs[{u}] has {} v-slices, expected card_v={}",
                    per_v.len(),
                    self.card_v
                )));
            }
            for (v, per_s) in per_v.iter().enumerate() {
                if per_s.len() != card_s {
                    return Err(Error::Validation(format!(
                        "x_given_uvs[{u}][{v}] has {} state slices, expected {card_s}",
                        per_s.len()
                    )));
                }
                for (s, row) in per_s.iter().enumerate() {
                    let cx = *card_x.get_or_insert(row.len());
                    if row.len() != cx || row.is_empty() {
                        return Err(Error::Validation(format!(
                            "x_given_uvs[{u}][{v}][{s}] has {} entries, expected {cx}",
                            row.len()
                        )));
                    }
                    let mut slice = row.clone();
                    validate_slice(&mut slice, &format!("P(x|u={u},v={v},s={s})"), true)?;
                    x_flat.extend_from_slice(&slice);
                }
            }
        }
        AuxiliaryPolicy::new(
            self.card_u,
            self.card_v,
            card_s,
            card_x.unwrap_or(0),
            uv_flat,
            x_flat,
        )
    }
}

/// Joint distribution `P(s) P(u,v|s) P(x|u,v,s) p(y,z|x,s)` over the axes
/// `(S,U,V,X,Y,Z)` — the table every rate expression is evaluated on.
pub fn induced_joint(ch: &DiscreteSDWC, pol: &AuxiliaryPolicy) -> Result<JointTable> {
    if pol.card_s() != ch.card_s() || pol.card_x() != ch.card_x() {
        return Err(Error::Validation(format!(
            "policy is over (card_s={}, card_x={}) but channel has (card_s={}, card_x={})",
            pol.card_s(),
            pol.card_x(),
            ch.card_s(),
            ch.card_x()
        )));
    }
    let axes = vec![
        Axis::new("S", ch.card_s()),
        Axis::new("U", pol.card_u()),
        Axis::new("V", pol.card_v()),
        Axis::new("X", ch.card_x()),
        Axis::new("Y", ch.card_y()),
        Axis::new("Z", ch.card_z()),
    ];
    JointTable::from_fn(axes, |idx| {
        let (s, u, v, x, y, z) = (idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]);
        ch.state_prior().probs()[s] * pol.uv(s, u, v) * pol.x(u, v, s, x) * ch.law(x, s, y, z)
    })
}

/// A point in rate space: total rate, optional `(r1, r2)` split, and the
/// equivocation rate, all in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub r: f64,
    pub split: Option<(f64, f64)>,
    pub r_e: f64,
}

impl RatePoint {
    pub fn new(r: f64, r_e: f64) -> Result<Self> {
        if r < 0.0 || r_e < 0.0 {
            return Err(Error::Validation(format!(
                "rate point components must be nonnegative (r={r}, r_e={r_e})"
            )));
        }
        Ok(Self {
            r,
            split: None,
            r_e,
        })
    }

    /// Constructs from split rates; the total is their sum.
    pub fn with_split(r1: f64, r2: f64, r_e: f64) -> Result<Self> {
        if r1 < 0.0 || r2 < 0.0 || r_e < 0.0 {
            return Err(Error::Validation(format!(
                "rate point components must be nonnegative (r1={r1}, r2={r2}, r_e={r_e})"
            )));
        }
        Ok(Self {
            r: r1 + r2,
            split: Some((r1, r2)),
            r_e,
        })
    }

    /// A perfect-secrecy point caps the reported equivocation at the
    /// message rate (equivocation cannot exceed what is sent).
    pub fn perfect_secrecy(r: f64, r_e: f64) -> Result<Self> {
        Self::new(r, r_e.min(r))
    }

    /// Convex combination of rate points (time sharing between operating
    /// points). Weights must form a distribution; splits are combined only
    /// when every point carries one.
    pub fn convex_combine(points: &[(RatePoint, f64)]) -> Result<RatePoint> {
        if points.is_empty() {
            return Err(Error::Validation("convex combination of no points".into()));
        }
        let total: f64 = points.iter().map(|(_, w)| *w).sum();
        if points.iter().any(|(_, w)| *w < 0.0) || (total - 1.0).abs() > MASS_TOL {
            return Err(Error::Validation(
                "convex-combination weights must be nonnegative and sum to 1".into(),
            ));
        }
        let r = points.iter().map(|(p, w)| p.r * w).sum();
        let r_e = points.iter().map(|(p, w)| p.r_e * w).sum();
        let split = points
            .iter()
            .map(|(p, w)| p.split.map(|(a, b)| (a * w, b * w)))
            .try_fold((0.0, 0.0), |(a, b), s| s.map(|(x, y)| (a + x, b + y)));
        Ok(RatePoint { r, split, r_e })
    }
}
