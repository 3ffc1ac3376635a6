//! The dual potential pair on the simplex and its logit space.
//!
//! ```text
//! φ(y)  = Σ yᵢ log yᵢ        negative entropy on Int Δ
//! φ*(z) = log Σ exp(zᵢ)      log-sum-exp on ℝᵈ
//! ∇φ*   = softmax,  ∇φ = log y + c𝟏
//! φ(y) + φ*(z) − ⟨z, y⟩ = KL(y ‖ softmax(z)) ≥ 0
//! ```
//!
//! Probabilities live strictly inside the simplex; nothing here ever
//! evaluates `0 · log 0`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Absolute tolerance on `Σ yᵢ = 1` accepted by [`Probabilities::new`].
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Default threshold (nats) below which a Fenchel–Young gap counts as on the seam.
pub const DEFAULT_SEAM_TOLERANCE: f64 = 1e-9;

/// Smallest entry [`grad_potential`] accepts before its logarithm is considered underflowed.
pub const UNDERFLOW_FLOOR: f64 = 1e-300;

/// A point of the open probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Probabilities(Vec<f64>);

impl Probabilities {
    /// Validates and renormalizes `p`.
    ///
    /// Nonpositive entries are rejected, never clamped.
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.len() < 2 {
            return domain(format!("need at least 2 classes, got {}", p.len()));
        }
        if let Some((i, &v)) = p.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return domain(format!("entry {i} = {v} is not a positive finite probability"));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return domain(format!("entries sum to {sum}, not 1"));
        }
        Ok(Self::normalized(p))
    }

    /// The uniform distribution on `d` classes.
    pub fn uniform(d: usize) -> Result<Self> {
        if d < 2 {
            return domain(format!("need at least 2 classes, got {d}"));
        }
        Ok(Self(vec![1.0 / d as f64; d]))
    }

    /// Divides by the sum; caller guarantees positive finite entries.
    pub(crate) fn normalized(mut p: Vec<f64>) -> Self {
        let sum: f64 = p.iter().sum();
        p.iter_mut().for_each(|v| *v /= sum);
        Self(p)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn min_entry(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for Probabilities {
    type Error = Error;

    fn try_from(p: Vec<f64>) -> Result<Self> {
        Self::new(p)
    }
}

impl From<Probabilities> for Vec<f64> {
    fn from(p: Probabilities) -> Self {
        p.0
    }
}

/// A raw logit vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Logits(Vec<f64>);

impl Logits {
    pub fn new(z: Vec<f64>) -> Result<Self> {
        if z.len() < 2 {
            return domain(format!("need at least 2 logits, got {}", z.len()));
        }
        if let Some((i, v)) = z.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return domain(format!("logit {i} = {v} is not finite"));
        }
        Ok(Self(z))
    }

    pub fn zeros(d: usize) -> Result<Self> {
        Self::new(vec![0.0; d])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `z + c𝟏`.
    pub fn shifted(&self, c: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|v| v + c).collect())
    }

    /// The zero-mean representative of this logit's class.
    pub fn class(&self) -> LogitClass {
        LogitClass::from_raw(&self.0)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for Logits {
    type Error = Error;

    fn try_from(z: Vec<f64>) -> Result<Self> {
        Self::new(z)
    }
}

impl From<Logits> for Vec<f64> {
    fn from(z: Logits) -> Self {
        z.0
    }
}

/// Logits modulo constant shifts, stored as the zero-mean representative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogitClass(Vec<f64>);

impl LogitClass {
    fn from_raw(z: &[f64]) -> Self {
        let mean = z.iter().sum::<f64>() / z.len() as f64;
        Self(z.iter().map(|v| v - mean).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_logits(&self) -> Logits {
        Logits(self.0.clone())
    }

    /// Entrywise comparison of representatives.
    pub fn approx_eq(&self, other: &LogitClass, tol: f64) -> bool {
        self.dim() == other.dim()
            && self.0.iter().zip(&other.0).all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Fenchel–Young gap between a logit and a probability vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    /// `KL(y ‖ softmax(z))` in nats.
    pub gap: f64,
    pub on_seam: bool,
}

fn check_same_dim(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Dimension { expected, actual });
    }
    Ok(())
}

/// `log Σ exp(zᵢ)` with max subtraction.
pub fn log_sum_exp(z: &Logits) -> f64 {
    lse_slice(z.as_slice())
}

/// Fallible variant for unchecked input.
pub fn log_sum_exp_checked(z: &[f64]) -> Result<f64> {
    if let Some(v) = z.iter().find(|v| !v.is_finite()) {
        return domain(format!("log-sum-exp of non-finite value {v}"));
    }
    if z.is_empty() {
        return domain("log-sum-exp of empty vector");
    }
    Ok(lse_slice(z))
}

pub(crate) fn lse_slice(z: &[f64]) -> f64 {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = z.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// `z − LSE(z)`.
pub fn log_softmax(z: &Logits) -> Vec<f64> {
    let lse = log_sum_exp(z);
    z.as_slice().iter().map(|v| v - lse).collect()
}

/// `Σ yᵢ log yᵢ`.
pub fn neg_entropy(y: &Probabilities) -> f64 {
    y.as_slice().iter().map(|&v| v * v.ln()).sum()
}

pub fn softmax(z: &Logits) -> Probabilities {
    Probabilities::normalized(softmax_slice(z.as_slice()))
}

pub(crate) fn softmax_slice(z: &[f64]) -> Vec<f64> {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = z.iter().map(|v| (v - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    // entries that underflow are floored so the image stays in the open simplex
    exps.into_iter().map(|e| (e / sum).max(f64::MIN_POSITIVE)).collect()
}

/// The zero-mean gauge `Π(y) = log y − mean(log y)·𝟏`.
pub fn grad_potential(y: &Probabilities) -> Result<LogitClass> {
    if let Some((i, v)) = y.as_slice().iter().enumerate().find(|(_, v)| **v < UNDERFLOW_FLOOR) {
        return domain(format!("entry {i} = {v:e} underflows the logarithm"));
    }
    if let [p, q] = y.as_slice() {
        // two-class closed form ±½ log(p/q), one rounding fewer than the mean route
        let half = 0.5 * (p / q).ln();
        return Ok(LogitClass(vec![half, -half]));
    }
    let logs: Vec<f64> = y.as_slice().iter().map(|v| v.ln()).collect();
    Ok(LogitClass::from_raw(&logs))
}

/// `KL(y ‖ softmax(z))` via `Σ yᵢ (log yᵢ − log_softmax(z)ᵢ)`, with the default seam tolerance.
pub fn fenchel_young_gap(z: &Logits, y: &Probabilities) -> Result<GapReport> {
    fenchel_young_gap_with_tolerance(z, y, DEFAULT_SEAM_TOLERANCE)
}

pub fn fenchel_young_gap_with_tolerance(
    z: &Logits,
    y: &Probabilities,
    seam_tolerance: f64,
) -> Result<GapReport> {
    check_same_dim(z.dim(), y.dim())?;
    let log_q = log_softmax(z);
    let mut gap: f64 = y
        .as_slice()
        .iter()
        .zip(&log_q)
        .map(|(&yi, &lq)| yi * (yi.ln() - lq))
        .sum();
    // rounding can leave a hair below zero
    if (-1e-12..0.0).contains(&gap) {
        gap = 0.0;
    }
    Ok(GapReport {
        gap,
        on_seam: gap <= seam_tolerance,
    })
}

/// The literal three-term expression `φ(y) + φ*(z) − ⟨z, y⟩`.
pub fn fenchel_young_three_term(z: &Logits, y: &Probabilities) -> Result<f64> {
    check_same_dim(z.dim(), y.dim())?;
    let inner: f64 = z.as_slice().iter().zip(y.as_slice()).map(|(a, b)| a * b).sum();
    Ok(neg_entropy(y) + log_sum_exp(z) - inner)
}

/// `softmax(z / r)`; the fold `r = 0` and negative values are not temperatures.
pub fn temperature_softmax(z: &Logits, r: f64) -> Result<Probabilities> {
    if !(r.is_finite() && r > 0.0) {
        return domain(format!("temperature must be positive and finite, got {r}"));
    }
    let scaled: Vec<f64> = z.as_slice().iter().map(|v| v / r).collect();
    Ok(Probabilities::normalized(softmax_slice(&scaled)))
}

/// `Δ = z₁ − z₂` for a two-class logit.
pub fn two_class_delta(z: &Logits) -> Result<f64> {
    check_same_dim(2, z.dim())?;
    Ok(z.as_slice()[0] - z.as_slice()[1])
}

/// Logistic sigmoid, evaluated on the branch that avoids overflow.
pub fn two_class_sigmoid(delta: f64) -> f64 {
    if delta >= 0.0 {
        1.0 / (1.0 + (-delta).exp())
    } else {
        let e = delta.exp();
        e / (1.0 + e)
    }
}

/// Binary KL `p log(p/σ(Δ)) + (1−p) log((1−p)/(1−σ(Δ)))`, via log-sigmoids.
pub fn two_class_gap(delta: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return domain(format!("p = {p} is outside (0, 1)"));
    }
    if !delta.is_finite() {
        return domain(format!("delta = {delta} is not finite"));
    }
    let log_sig = |t: f64| -> f64 { -softplus(-t) };
    let q = 1.0 - p;
    let gap = p * (p.ln() - log_sig(delta)) + q * (q.ln() - log_sig(-delta));
    Ok(if (-1e-12..0.0).contains(&gap) { 0.0 } else { gap })
}

/// `log(1 + eˣ)`.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
