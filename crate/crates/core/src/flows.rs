//! Flows on the screen: bias shifts of logits and replicator dynamics on the simplex.
//!
//! The replicator field uses fitness `fᵢ = zᵢ − log yᵢ`:
//!
//! ```text
//! ẏᵢ = yᵢ (fᵢ − Σⱼ yⱼ fⱼ)
//! ```
//!
//! Its only interior rest point is `softmax(z)` and `KL(y ‖ softmax(z))`
//! decreases along it, so the integrator below monitors that gap and rejects
//! any step that would raise it.

use serde::Serialize;

use crate::duality::{fenchel_young_gap, softmax, Logits, Probabilities};
use crate::error::{domain, Error, Result};

/// Largest replicator step accepted.
pub const MAX_DT: f64 = 0.1;

/// Upper bound on recorded states in a [`FlowTrace`].
pub const MAX_TRACE_STATES: usize = 1000;

/// Slack allowed when comparing successive gaps.
pub const LYAPUNOV_SLACK: f64 = 1e-12;

const GROWTH: f64 = 1.2;
const MIN_DT: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowState {
    pub t: f64,
    pub y: Probabilities,
    /// `KL(y ‖ target)` at this state.
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowTrace {
    pub states: Vec<FlowState>,
    pub target: Probabilities,
    pub final_gap: f64,
    pub converged: bool,
    /// Attempted steps, accepted or not.
    pub steps: usize,
    pub rejected: usize,
}

impl FlowTrace {
    pub fn last(&self) -> &FlowState {
        self.states.last().expect("trace always holds the initial state")
    }
}

/// `z + c𝟏`.
pub fn bias_shift_flow(z: &Logits, c: f64) -> Result<Logits> {
    z.shifted(c)
}

/// The replicator vector field at `y` for logits `z`.
pub fn replicator_field(y: &[f64], z: &[f64]) -> Vec<f64> {
    let fitness: Vec<f64> = z.iter().zip(y).map(|(zi, yi)| zi - yi.ln()).collect();
    let mean: f64 = fitness.iter().zip(y).map(|(f, yi)| f * yi).sum();
    y.iter().zip(&fitness).map(|(yi, f)| yi * (f - mean)).collect()
}

/// One RK4 step of the replicator flow followed by renormalization.
pub fn replicator_step(y: &Probabilities, z: &Logits, dt: f64) -> Result<Probabilities> {
    if y.dim() != z.dim() {
        return Err(Error::Dimension {
            expected: y.dim(),
            actual: z.dim(),
        });
    }
    if !(dt > 0.0 && dt <= MAX_DT) {
        return domain(format!("dt = {dt} outside (0, {MAX_DT}]"));
    }
    let y0 = y.as_slice();
    let zs = z.as_slice();
    let stage = |base: &[f64], k: &[f64], h: f64| -> Result<Vec<f64>> {
        let next: Vec<f64> = base.iter().zip(k).map(|(b, ki)| b + h * ki).collect();
        if next.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::StepRejected {
                reason: "stage left the open simplex".into(),
                suggested_dt: dt / 2.0,
            });
        }
        Ok(next)
    };
    let k1 = replicator_field(y0, zs);
    let k2 = replicator_field(&stage(y0, &k1, dt / 2.0)?, zs);
    let k3 = replicator_field(&stage(y0, &k2, dt / 2.0)?, zs);
    let k4 = replicator_field(&stage(y0, &k3, dt)?, zs);
    let incr: Vec<f64> = (0..y0.len())
        .map(|i| (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0)
        .collect();
    let next = stage(y0, &incr, dt)?;
    Ok(Probabilities::normalized(next))
}

/// Integrates from `y0` until `KL(y ‖ softmax(z)) ≤ tol` or `max_steps` attempts.
///
/// The step size halves on rejection (simplex exit or gap increase) and grows
/// by 1.2 on success, capped at [`MAX_DT`]. Running out of steps is reported
/// through `converged = false`, not an error.
pub fn flow_to_equilibrium(
    y0: &Probabilities,
    z: &Logits,
    tol: f64,
    max_steps: usize,
) -> Result<FlowTrace> {
    if !(tol >= 1e-12) {
        return domain(format!("tolerance {tol:e} below 1e-12"));
    }
    if y0.dim() != z.dim() {
        return Err(Error::Dimension {
            expected: y0.dim(),
            actual: z.dim(),
        });
    }
    let target = softmax(z);
    let mut y = y0.clone();
    let mut gap = fenchel_young_gap(z, &y)?.gap;
    let mut t = 0.0;
    let mut dt = MAX_DT;
    let mut states = vec![FlowState { t, y: y.clone(), gap }];
    let mut steps = 0;
    let mut rejected = 0;

    while gap > tol && steps < max_steps && dt >= MIN_DT {
        steps += 1;
        let candidate = match replicator_step(&y, z, dt) {
            Ok(next) => next,
            Err(Error::StepRejected { .. }) => {
                rejected += 1;
                dt /= 2.0;
                continue;
            }
            Err(e) => return Err(e),
        };
        let next_gap = fenchel_young_gap(z, &candidate)?.gap;
        if next_gap > gap + LYAPUNOV_SLACK {
            rejected += 1;
            dt /= 2.0;
            continue;
        }
        t += dt;
        y = candidate;
        gap = next_gap;
        states.push(FlowState { t, y: y.clone(), gap });
        dt = (dt * GROWTH).min(MAX_DT);
    }

    Ok(FlowTrace {
        states: thin(states, MAX_TRACE_STATES),
        target,
        final_gap: gap,
        converged: gap <= tol,
        steps,
        rejected,
    })
}

/// Keeps at most `limit` evenly spaced states, always including both ends.
fn thin(states: Vec<FlowState>, limit: usize) -> Vec<FlowState> {
    let n = states.len();
    if n <= limit {
        return states;
    }
    let mut keep = Vec::with_capacity(limit);
    let mut next = 0;
    for (i, s) in states.into_iter().enumerate() {
        // index of the k-th kept state: round(k (n−1) / (limit−1))
        let want = (next * (n - 1) + (limit - 1) / 2) / (limit - 1);
        if i == want {
            keep.push(s);
            next += 1;
        }
    }
    keep
}
