//! Seeded property suites.
//!
//! Each property corresponds to one listed invariant of a module and reports
//! the largest violation seen across its samples. Randomness comes from a
//! ChaCha stream per property, so results depend only on `(seed, samples)`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::duality::{
    fenchel_young_gap, fenchel_young_three_term, grad_potential, log_sum_exp, neg_entropy,
    softmax, Logits, Probabilities,
};
use crate::error::{Error, Result};
use crate::flows::{flow_to_equilibrium, replicator_field, LYAPUNOV_SLACK};
use crate::geometry::{
    alpha_pair, dalpha_pair, lagrangian_graph_point, omega_q_matrix, omega_q_pair,
    seam_diagnostics, validate_dalpha_by_finite_differences, CollarPoint, CollarTangent,
    GraphSeed, Side,
};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Duality,
    Geometry,
    Flows,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "duality" => Ok(Suite::Duality),
            "geometry" => Ok(Suite::Geometry),
            "flows" => Ok(Suite::Flows),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Property id → tolerance replacing the built-in one.
    pub tolerance_overrides: BTreeMap<String, f64>,
    /// Convergence target for the flow suite, nats.
    pub flow_tolerance: f64,
    pub flow_max_steps: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 42,
            tolerance_overrides: BTreeMap::new(),
            flow_tolerance: 1e-8,
            flow_max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyOutcome {
    pub id: String,
    pub module: String,
    pub bullet: String,
    pub tolerance: f64,
    pub max_violation: f64,
    pub samples: usize,
    pub passed: bool,
    /// Inputs of the worst sample, recorded only on failure.
    pub failing_sample: Option<Value>,
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<40} max_violation={:.3e} tol={:.1e} n={} [{}: {}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.max_violation,
            self.tolerance,
            self.samples,
            self.module,
            self.bullet
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub outcomes: Vec<PropertyOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn get(&self, id: &str) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| o.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} of {} properties passed (seed {}, samples {})",
            self.outcomes.len() - failed,
            self.outcomes.len(),
            self.seed,
            self.samples
        )
    }
}

/// Tracks the worst violation of one property.
struct Property {
    id: &'static str,
    module: &'static str,
    bullet: &'static str,
    tolerance: f64,
    worst: f64,
    worst_sample: Option<Value>,
    samples: usize,
}

impl Property {
    fn new(id: &'static str, module: &'static str, bullet: &'static str, tolerance: f64, cfg: &VerifyConfig) -> Self {
        Self {
            id,
            module,
            bullet,
            tolerance: cfg.tolerance_overrides.get(id).copied().unwrap_or(tolerance),
            worst: 0.0,
            worst_sample: None,
            samples: 0,
        }
    }

    fn observe(&mut self, violation: f64, sample: impl FnOnce() -> Value) {
        self.samples += 1;
        // NaN counts as the worst possible outcome
        let v = if violation.is_nan() { f64::INFINITY } else { violation };
        if v > self.worst || (self.worst_sample.is_none() && v > self.tolerance) {
            self.worst = v;
            if v > self.tolerance {
                self.worst_sample = Some(sample());
            }
        }
    }

    fn finish(self) -> PropertyOutcome {
        let passed = self.worst <= self.tolerance;
        PropertyOutcome {
            id: self.id.to_string(),
            module: self.module.to_string(),
            bullet: self.bullet.to_string(),
            tolerance: self.tolerance,
            max_violation: self.worst,
            samples: self.samples,
            passed,
            failing_sample: if passed { None } else { self.worst_sample },
        }
    }
}

/// Deterministic per-property stream.
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_logits(rng: &mut impl Rng, d: usize, bound: f64) -> Logits {
    Logits::new((0..d).map(|_| rng.gen_range(-bound..=bound)).collect()).expect("finite")
}

/// A point of the simplex with every entry at least `floor` (`d · floor < 1`).
pub fn random_probabilities(rng: &mut impl Rng, d: usize, floor: f64) -> Probabilities {
    let w: Vec<f64> = (0..d).map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-300).collect();
    let total: f64 = w.iter().sum();
    let free = 1.0 - d as f64 * floor;
    let p: Vec<f64> = w.iter().map(|wi| floor + free * wi / total).collect();
    let sum: f64 = p.iter().sum();
    Probabilities::new(p.into_iter().map(|v| v / sum).collect()).expect("interior point")
}

/// A tangent with `Σ δyᵢ = 0` and unit Euclidean norm over all components.
pub fn random_tangent(rng: &mut impl Rng, d: usize) -> CollarTangent {
    let mut dy: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mean = dy.iter().sum::<f64>() / d as f64;
    dy.iter_mut().for_each(|v| *v -= mean);
    let dz: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let dr: f64 = rng.gen_range(-1.0..1.0);
    let norm = (dr * dr + dy.iter().chain(&dz).map(|v| v * v).sum::<f64>()).sqrt();
    CollarTangent::new(
        dr / norm,
        dy.iter().map(|v| v / norm).collect(),
        dz.iter().map(|v| v / norm).collect(),
    )
    .expect("centered δy")
}

/// Unit simplex-tangent direction `v` with `Σ vᵢ = 0`.
pub fn random_simplex_direction(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mean = v.iter().sum::<f64>() / d as f64;
    v.iter_mut().for_each(|x| *x -= mean);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

fn inf_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

const DUALITY_DIMS: [usize; 4] = [2, 3, 5, 10];

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.samples == 0 {
        return Err(Error::Domain("verify needs at least one sample".into()));
    }
    let mut outcomes = Vec::new();
    if matches!(suite, Suite::Duality | Suite::All) {
        outcomes.extend(duality_suite(cfg)?);
    }
    if matches!(suite, Suite::Geometry | Suite::All) {
        outcomes.extend(geometry_suite(cfg)?);
    }
    if matches!(suite, Suite::Flows | Suite::All) {
        outcomes.extend(flows_suite(cfg)?);
    }
    Ok(VerifyReport {
        seed: cfg.seed,
        samples: cfg.samples,
        outcomes,
    })
}

fn duality_suite(cfg: &VerifyConfig) -> Result<Vec<PropertyOutcome>> {
    const M: &str = "dual_core";
    let n = cfg.samples;
    let mut out = Vec::new();

    let mut simplex = Property::new("duality.softmax_simplex", M, "softmax entries positive, sum to 1", 1e-12, cfg);
    let mut rng = rng_for(cfg.seed, 1);
    for k in 0..n {
        let d = DUALITY_DIMS[k % 4];
        let bound = if k % 2 == 0 { 10.0 } else { 700.0 };
        let z = random_logits(&mut rng, d, bound);
        let y = softmax(&z);
        let v = if y.as_slice().iter().all(|p| *p > 0.0) {
            (y.as_slice().iter().sum::<f64>() - 1.0).abs()
        } else {
            f64::INFINITY
        };
        simplex.observe(v, || json!({ "z": z }));
    }
    out.push(simplex.finish());

    let mut shift = Property::new("duality.bias_shift_invariance", M, "softmax(z + c1) = softmax(z), |c| <= 100", 1e-12, cfg);
    let mut rng = rng_for(cfg.seed, 2);
    for k in 0..n {
        let z = random_logits(&mut rng, DUALITY_DIMS[k % 4], 10.0);
        let c = rng.gen_range(-100.0..=100.0);
        let v = inf_dist(softmax(&z.shifted(c)?).as_slice(), softmax(&z).as_slice());
        shift.observe(v, || json!({ "z": z, "c": c }));
    }
    out.push(shift.finish());

    let mut grad_lse = Property::new("duality.gradient_log_sum_exp", M, "Gradient check A: FD of log-sum-exp = softmax", 1e-6, cfg);
    let mut rng = rng_for(cfg.seed, 3);
    let h = 1e-5;
    for k in 0..n {
        let z = random_logits(&mut rng, DUALITY_DIMS[k % 4], 5.0);
        let s = softmax(&z);
        let mut worst = 0.0_f64;
        for i in 0..z.dim() {
            let mut plus = z.as_slice().to_vec();
            let mut minus = plus.clone();
            plus[i] += h;
            minus[i] -= h;
            let fd = (log_sum_exp(&Logits::new(plus)?) - log_sum_exp(&Logits::new(minus)?)) / (2.0 * h);
            worst = worst.max((fd - s.as_slice()[i]).abs());
        }
        grad_lse.observe(worst, || json!({ "z": z }));
    }
    out.push(grad_lse.finish());

    let mut grad_phi = Property::new("duality.gradient_neg_entropy", M, "Gradient check B: directional FD of phi = <Pi(y), v>", 1e-6, cfg);
    let mut rng = rng_for(cfg.seed, 4);
    for k in 0..n {
        let d = DUALITY_DIMS[k % 4];
        let y = random_probabilities(&mut rng, d, 0.01);
        let v = random_simplex_direction(&mut rng, d);
        let at = |t: f64| -> Result<f64> {
            let p = y.as_slice().iter().zip(&v).map(|(a, b)| a + t * b).collect();
            Ok(neg_entropy(&Probabilities::new(p)?))
        };
        let fd = (at(h)? - at(-h)?) / (2.0 * h);
        let exact: f64 = grad_potential(&y)?.as_slice().iter().zip(&v).map(|(a, b)| a * b).sum();
        grad_phi.observe((fd - exact).abs(), || json!({ "y": y, "v": v }));
    }
    out.push(grad_phi.finish());

    let mut nonneg = Property::new("duality.gap_nonnegative", M, "Gap nonnegativity: gap >= 0", 0.0, cfg);
    let mut on_seam = Property::new("duality.gap_vanishes_on_seam", M, "Gap nonnegativity: gap(z, softmax z) = 0", 1e-12, cfg);
    let mut iff = Property::new("duality.gap_zero_iff_seam", M, "Gap nonnegativity: gap <= 1e-12 iff |y - softmax z| <= 1e-9", 0.0, cfg);
    let mut two_expr = Property::new("duality.gap_two_expressions", M, "Gap two-expression equality", 1e-10, cfg);
    let mut rng = rng_for(cfg.seed, 5);
    for k in 0..n {
        let d = DUALITY_DIMS[k % 4];
        let z = random_logits(&mut rng, d, 10.0);
        let y = if k % 2 == 0 { random_probabilities(&mut rng, d, 1e-4) } else { softmax(&z) };
        let g = fenchel_young_gap(&z, &y)?.gap;
        nonneg.observe((-g).max(0.0), || json!({ "z": z, "y": y }));
        let close = inf_dist(y.as_slice(), softmax(&z).as_slice()) <= 1e-9;
        iff.observe(if (g <= 1e-12) == close { 0.0 } else { 1.0 }, || json!({ "z": z, "y": y }));
        if k % 2 == 1 {
            on_seam.observe(g, || json!({ "z": z }));
        }
        let z2 = random_logits(&mut rng, d, 20.0);
        let y2 = random_probabilities(&mut rng, d, 1e-6);
        let diff = (fenchel_young_gap(&z2, &y2)?.gap - fenchel_young_three_term(&z2, &y2)?).abs();
        two_expr.observe(diff, || json!({ "z": z2, "y": y2 }));
    }
    out.extend([nonneg.finish(), on_seam.finish(), iff.finish(), two_expr.finish()]);

    let mut pi_then_softmax = Property::new("duality.gauge_softmax_after_pi", M, "Gauge round-trips: softmax(Pi(y)) = y", 1e-12, cfg);
    let mut softmax_then_pi = Property::new("duality.gauge_pi_after_softmax", M, "Gauge round-trips: Pi(softmax z) = [z]", 1e-9, cfg);
    let mut rng = rng_for(cfg.seed, 6);
    for k in 0..n {
        let d = DUALITY_DIMS[k % 4];
        let y = random_probabilities(&mut rng, d, 1e-4);
        let back = softmax(&grad_potential(&y)?.to_logits());
        pi_then_softmax.observe(inf_dist(back.as_slice(), y.as_slice()), || json!({ "y": y }));
        let z = random_logits(&mut rng, d, 10.0);
        let pi = grad_potential(&softmax(&z))?;
        softmax_then_pi.observe(inf_dist(pi.as_slice(), z.class().as_slice()), || json!({ "z": z }));
    }
    out.extend([pi_then_softmax.finish(), softmax_then_pi.finish()]);
    Ok(out)
}

fn random_point(rng: &mut impl Rng, d: usize, floor: f64) -> Result<CollarPoint> {
    let r = rng.gen_range(-2.0..2.0);
    CollarPoint::new(r, random_probabilities(rng, d, floor), random_logits(rng, d, 5.0))
}

fn geometry_suite(cfg: &VerifyConfig) -> Result<Vec<PropertyOutcome>> {
    const M: &str = "screen_geometry";
    let n = cfg.samples;
    let mut out = Vec::new();

    let mut linear = Property::new("geometry.alpha_linear_shift_invariant", M, "alpha_pair linear and invariant under z + c1", 1e-12, cfg);
    let mut bilinear = Property::new("geometry.forms_bilinear_antisymmetric", M, "dalpha_pair and omega_q_pair bilinear and antisymmetric", 1e-12, cfg);
    let mut matrix_anti = Property::new("geometry.matrix_antisymmetric", M, "omega_q_matrix antisymmetric to 1e-14", 1e-14, cfg);
    let mut shift_kernel = Property::new("geometry.bias_shift_kernel", M, "bias shift in ker alpha, ker i(.)dalpha, ker omega_q", 1e-12, cfg);
    let mut rank_oracle = Property::new("geometry.rank_matches_elimination", M, "omega_q rank matches elimination oracle", 0.0, cfg);
    let mut kernel_check = Property::new("geometry.kernel_vectors", M, "kernel vectors satisfy |M v| <= 1e-8 |M|", 1e-8, cfg);
    let mut rng = rng_for(cfg.seed, 11);
    for k in 0..n {
        let d = 2 + k % 5;
        let point = random_point(&mut rng, d, 1e-3)?;
        let v = random_tangent(&mut rng, d);
        let w = random_tangent(&mut rng, d);
        let (a, b) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let c = rng.gen_range(-10.0..10.0);
        let sample = || json!({ "point": point, "v": v, "w": w, "a": a, "b": b, "c": c });

        let combo = CollarTangent::combination(d, &[v.clone(), w.clone()], &[a, b]);
        let lin = (alpha_pair(&point, &combo)? - a * alpha_pair(&point, &v)? - b * alpha_pair(&point, &w)?).abs();
        let shifted = CollarPoint::new(point.r(), point.y().clone(), point.z().shifted(c)?)?;
        let inv = (alpha_pair(&shifted, &v)? - alpha_pair(&point, &v)?).abs();
        linear.observe(lin.max(inv), sample);

        let u = random_tangent(&mut rng, d);
        let vu = CollarTangent::combination(d, &[v.clone(), u.clone()], &[a, b]);
        let bil_d = (dalpha_pair(&vu, &w)? - a * dalpha_pair(&v, &w)? - b * dalpha_pair(&u, &w)?).abs();
        let bil_o = (omega_q_pair(&point, &vu, &w)?
            - a * omega_q_pair(&point, &v, &w)?
            - b * omega_q_pair(&point, &u, &w)?)
            .abs();
        let anti_d = (dalpha_pair(&v, &w)? + dalpha_pair(&w, &v)?).abs();
        let anti_o = (omega_q_pair(&point, &v, &w)? + omega_q_pair(&point, &w, &v)?).abs();
        bilinear.observe(bil_d.max(bil_o).max(anti_d).max(anti_o), sample);

        let report = omega_q_matrix(&point);
        matrix_anti.observe(report.antisymmetry_defect(), sample);

        let s = CollarTangent::bias_shift(d);
        let norm = linalg::inf_norm(&nalgebra::DMatrix::from_fn(2 * d, 2 * d, |i, j| report.matrix[i][j]));
        let shift_v = alpha_pair(&point, &s)?
            .abs()
            .max(dalpha_pair(&s, &w)?.abs())
            .max(report.shift_residual.unwrap_or(f64::INFINITY));
        shift_kernel.observe(shift_v, sample);

        let oracle = linalg::elimination_rank(&report.matrix, 1e-10);
        rank_oracle.observe(if oracle == report.rank { 0.0 } else { 1.0 }, || {
            json!({ "point": point, "svd_rank": report.rank, "elimination_rank": oracle })
        });

        let m = nalgebra::DMatrix::from_fn(2 * d, 2 * d, |i, j| report.matrix[i][j]);
        let worst_kernel = report
            .kernel_basis
            .iter()
            .map(|t| {
                let coords = tangent_coords(t);
                linalg::mat_vec_inf(&m, &coords) / norm.max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max);
        kernel_check.observe(worst_kernel, sample);
    }
    out.extend([
        linear.finish(),
        bilinear.finish(),
        matrix_anti.finish(),
        shift_kernel.finish(),
        rank_oracle.finish(),
        kernel_check.finish(),
    ]);

    let mut table = Property::new("geometry.rank_table_two_class", M, "d=2 rank table (r, Delta) in {0, +-0.5, +-1}^2", 0.0, cfg);
    for (r, delta) in rank_table_grid() {
        let report = omega_q_matrix(&two_class_point(r, delta)?);
        let oracle = linalg::elimination_rank(&report.matrix, 1e-10);
        let expected = two_class_expected_rank(r, delta);
        let bad = report.rank != oracle || report.rank != expected;
        table.observe(if bad { 1.0 } else { 0.0 }, || {
            json!({ "r": r, "delta": delta, "svd_rank": report.rank, "elimination_rank": oracle })
        });
    }
    out.push(table.finish());

    let mut jet = Property::new("geometry.jet_pairing_on_seam", M, "jet_pairing = 0 on the seam", 1e-10, cfg);
    let mut fd = Property::new("geometry.dalpha_finite_difference", M, "closed-form dalpha = FD exterior derivative", 1e-6, cfg);
    let mut fibers = Property::new("geometry.lagrangian_fibers_on_seam", M, "graph points of L+ and L- have gap 0", 1e-12, cfg);
    let mut rng = rng_for(cfg.seed, 12);
    for k in 0..n {
        let d = 2 + k % 5;
        let z = random_logits(&mut rng, d, 5.0);
        let on = CollarPoint::on_fold(softmax(&z), z.clone())?;
        let z_dot: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let diag = seam_diagnostics(&on, &z_dot)?;
        jet.observe(diag.jet_pairing.abs(), || json!({ "z": z, "z_dot": z_dot }));

        let point = random_point(&mut rng, d, 1e-3)?;
        let v = random_tangent(&mut rng, d);
        let w = random_tangent(&mut rng, d);
        let disc = validate_dalpha_by_finite_differences(&point, &v, &w, 1e-5)?;
        fd.observe(disc, || json!({ "point": point, "v": v, "w": w }));

        let r = rng.gen_range(1e-6..2.0);
        let plus = lagrangian_graph_point(Side::Plus, r, GraphSeed::Logits(z.clone()))?;
        let y = random_probabilities(&mut rng, d, 1e-4);
        let minus = lagrangian_graph_point(Side::Minus, -r, GraphSeed::Probabilities(y.clone()))?;
        let g = fenchel_young_gap(plus.z(), plus.y())?
            .gap
            .max(fenchel_young_gap(minus.z(), minus.y())?.gap);
        fibers.observe(g, || json!({ "r": r, "z": z, "y": y }));
    }
    out.extend([jet.finish(), fd.finish(), fibers.finish()]);
    Ok(out)
}

/// Coordinates of a tangent in the `(∂r; eᵢ − e_d; ∂zᵢ)` basis.
pub fn tangent_coords(t: &CollarTangent) -> Vec<f64> {
    let d = t.dim();
    let mut c = Vec::with_capacity(2 * d);
    c.push(t.dr);
    c.extend_from_slice(&t.dy()[..d - 1]);
    c.extend_from_slice(&t.dz);
    c
}

pub fn rank_table_grid() -> Vec<(f64, f64)> {
    const VALUES: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];
    VALUES
        .iter()
        .flat_map(|&r| VALUES.iter().map(move |&delta| (r, delta)))
        .collect()
}

/// Rank of the 4×4 two-class matrix read off its only nonzero column `(Δ, r², −r²)`.
fn two_class_expected_rank(r: f64, delta: f64) -> usize {
    if r == 0.0 && delta == 0.0 {
        0
    } else {
        2
    }
}

/// `(r, y = σ(Δ), z = (Δ/2, −Δ/2))`.
pub fn two_class_point(r: f64, delta: f64) -> Result<CollarPoint> {
    let z = Logits::new(vec![delta / 2.0, -delta / 2.0])?;
    CollarPoint::new(r, softmax(&z), z)
}

fn flows_suite(cfg: &VerifyConfig) -> Result<Vec<PropertyOutcome>> {
    const M: &str = "flows";
    let mut out = Vec::new();
    let mut simplex = Property::new("flows.simplex_preservation", M, "Simplex preservation", 1e-12, cfg);
    let mut lyapunov = Property::new("flows.lyapunov_monotone", M, "Lyapunov monotonicity of KL", LYAPUNOV_SLACK, cfg);
    let mut equilibrium = Property::new("flows.equilibrium_field", M, "Equilibrium: field at softmax(z) vanishes", 1e-14, cfg);
    let mut equivariance = Property::new("flows.bias_shift_equivariance", M, "Bias-shift equivariance of traces", 1e-12, cfg);
    let mut reduction = Property::new("flows.two_class_reduction", M, "d=2 reduction p' = p(1-p)(Delta - logit p)", 1e-14, cfg);
    let mut convergence = Property::new("flows.convergence", M, "flow reaches the tolerance within max_steps", 0.0, cfg);

    let mut rng = rng_for(cfg.seed, 21);
    // flows are the slow part; cap at 100 trajectories
    let trajectories = cfg.samples.min(100);
    for k in 0..cfg.samples {
        let d = 2 + k % 4;
        let z = random_logits(&mut rng, d, 5.0);
        let eq = softmax(&z);
        let field = replicator_field(eq.as_slice(), z.as_slice());
        equilibrium.observe(field.iter().map(|v| v.abs()).fold(0.0, f64::max), || json!({ "z": z }));

        let p: f64 = rng.gen_range(1e-3..1.0 - 1e-3);
        let delta: f64 = rng.gen_range(-5.0..5.0);
        let f2 = replicator_field(&[p, 1.0 - p], &[delta, 0.0]);
        let reduced = p * (1.0 - p) * (delta - (p / (1.0 - p)).ln());
        reduction.observe((f2[0] - reduced).abs().max((f2[1] + reduced).abs()), || json!({ "p": p, "delta": delta }));

        if k >= trajectories {
            continue;
        }
        let y0 = random_probabilities(&mut rng, d, 1e-3);
        let c = rng.gen_range(-10.0..10.0);
        let sample = || json!({ "z": z, "y0": y0, "c": c });
        let trace = flow_to_equilibrium(&y0, &z, cfg.flow_tolerance, cfg.flow_max_steps)?;
        convergence.observe(if trace.converged { 0.0 } else { 1.0 }, sample);
        let worst_simplex = trace
            .states
            .iter()
            .map(|s| {
                if s.y.min_entry() > 0.0 {
                    (s.y.as_slice().iter().sum::<f64>() - 1.0).abs()
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max);
        simplex.observe(worst_simplex, sample);
        let rise = trace
            .states
            .windows(2)
            .map(|w| w[1].gap - w[0].gap)
            .fold(0.0, f64::max);
        lyapunov.observe(rise, sample);

        let shifted = flow_to_equilibrium(&y0, &z.shifted(c)?, cfg.flow_tolerance, cfg.flow_max_steps)?;
        let diff = if shifted.states.len() != trace.states.len() {
            f64::INFINITY
        } else {
            trace
                .states
                .iter()
                .zip(&shifted.states)
                .map(|(a, b)| inf_dist(a.y.as_slice(), b.y.as_slice()).max((a.t - b.t).abs()))
                .fold(0.0, f64::max)
        };
        equivariance.observe(diff, sample);
    }
    out.extend([
        simplex.finish(),
        lyapunov.finish(),
        equilibrium.finish(),
        equivariance.finish(),
        reduction.finish(),
        convergence.finish(),
    ]);
    Ok(out)
}
