//! Pointwise evaluation of the screen 1-form, its derivative, and the collar 2-form.
//!
//! Points of the collar are triples `(r, y, z)`; tangents are `(δr, δy, δz)`
//! with `Σ δyᵢ = 0`. The forms evaluated here are
//!
//! ```text
//! α   = Σ zᵢ dyᵢ
//! dα  = Σ dzᵢ ∧ dyᵢ
//! ω_q = dr ∧ α + r² dα
//! ```
//!
//! Everything is computed in coordinates; no claim about global structure is
//! made. The bias-shift tangent `(0, 0, 𝟏)` is tracked explicitly because it
//! sits in the kernel of all three forms.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::duality::{
    dot, fenchel_young_gap, grad_potential, softmax, Logits, Probabilities,
};
use crate::error::{domain, Error, Result};
use crate::linalg;

/// Form evaluators refuse points with any probability below this.
pub const MIN_FORM_ENTRY: f64 = 1e-12;

/// Default relative tolerance on singular values for numerical rank.
pub const DEFAULT_RANK_TOLERANCE: f64 = 1e-12;

/// A point `(r, y, z)` of the thickened collar; `r = 0` is the fold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollarPoint {
    r: f64,
    y: Probabilities,
    z: Logits,
}

impl CollarPoint {
    pub fn new(r: f64, y: Probabilities, z: Logits) -> Result<Self> {
        if !r.is_finite() {
            return domain(format!("collar coordinate r = {r} is not finite"));
        }
        if y.dim() != z.dim() {
            return Err(Error::Dimension {
                expected: y.dim(),
                actual: z.dim(),
            });
        }
        if y.min_entry() < MIN_FORM_ENTRY {
            return domain(format!(
                "min probability {:e} is too close to the simplex boundary",
                y.min_entry()
            ));
        }
        Ok(Self { r, y, z })
    }

    /// A point on the fold `r = 0`.
    pub fn on_fold(y: Probabilities, z: Logits) -> Result<Self> {
        Self::new(0.0, y, z)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn y(&self) -> &Probabilities {
        &self.y
    }

    pub fn z(&self) -> &Logits {
        &self.z
    }

    pub fn dim(&self) -> usize {
        self.y.dim()
    }

    /// Moves along the constant tangent field `v` for time `t`.
    pub fn displaced(&self, v: &CollarTangent, t: f64) -> Result<Self> {
        check_dim(self.dim(), v.dim())?;
        let y = self
            .y
            .as_slice()
            .iter()
            .zip(&v.dy)
            .map(|(a, b)| a + t * b)
            .collect();
        let z = self
            .z
            .as_slice()
            .iter()
            .zip(&v.dz)
            .map(|(a, b)| a + t * b)
            .collect();
        Self::new(self.r + t * v.dr, Probabilities::new(y)?, Logits::new(z)?)
    }
}

/// An infinitesimal displacement `(δr, δy, δz)` with `Σ δyᵢ = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollarTangent {
    pub dr: f64,
    dy: Vec<f64>,
    pub dz: Vec<f64>,
}

impl CollarTangent {
    /// Rejects `δy` that is not tangent to the simplex.
    ///
    /// The sum tolerance is `1e-12`, scaled up by `‖δy‖₁` when that exceeds one.
    pub fn new(dr: f64, dy: Vec<f64>, dz: Vec<f64>) -> Result<Self> {
        if dy.len() != dz.len() {
            return Err(Error::Dimension {
                expected: dy.len(),
                actual: dz.len(),
            });
        }
        if dy.len() < 2 {
            return domain("tangent needs at least 2 components");
        }
        if !dr.is_finite() || dy.iter().chain(&dz).any(|v| !v.is_finite()) {
            return domain("tangent has non-finite components");
        }
        let sum: f64 = dy.iter().sum();
        let l1: f64 = dy.iter().map(|v| v.abs()).sum();
        if sum.abs() > 1e-12 * l1.max(1.0) {
            return domain(format!("δy sums to {sum:e}, not 0"));
        }
        Ok(Self { dr, dy, dz })
    }

    pub fn zero(d: usize) -> Self {
        Self {
            dr: 0.0,
            dy: vec![0.0; d],
            dz: vec![0.0; d],
        }
    }

    /// `(δr, δy, δz) = (0, 0, 𝟏)`, the infinitesimal bias shift.
    pub fn bias_shift(d: usize) -> Self {
        Self {
            dr: 0.0,
            dy: vec![0.0; d],
            dz: vec![1.0; d],
        }
    }

    /// `∂r`.
    pub fn radial(d: usize) -> Self {
        Self {
            dr: 1.0,
            ..Self::zero(d)
        }
    }

    /// `eᵢ − e_d` in the simplex directions.
    pub fn simplex_basis(d: usize, i: usize) -> Self {
        let mut t = Self::zero(d);
        t.dy[i] += 1.0;
        t.dy[d - 1] -= 1.0;
        t
    }

    /// `∂zᵢ`.
    pub fn logit_basis(d: usize, i: usize) -> Self {
        let mut t = Self::zero(d);
        t.dz[i] = 1.0;
        t
    }

    pub fn dy(&self) -> &[f64] {
        &self.dy
    }

    pub fn dim(&self) -> usize {
        self.dy.len()
    }

    /// `Σ cₖ bₖ`; the simplex constraint is linear, so no re-check is needed.
    pub fn combination(d: usize, basis: &[CollarTangent], coeffs: &[f64]) -> Self {
        let mut out = Self::zero(d);
        for (b, &c) in basis.iter().zip(coeffs) {
            out.dr += c * b.dr;
            for i in 0..d {
                out.dy[i] += c * b.dy[i];
                out.dz[i] += c * b.dz[i];
            }
        }
        out
    }
}

/// Matrix of a 2-form in an explicit tangent basis, with rank diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    /// Row-major `n × n`, antisymmetric.
    pub matrix: Vec<Vec<f64>>,
    pub rank: usize,
    pub kernel_basis: Vec<CollarTangent>,
    pub tolerance_used: f64,
    /// `‖M · s‖∞` for the bias-shift coordinates `s`, when the shift is part of the basis.
    pub shift_residual: Option<f64>,
    pub shift_in_kernel: bool,
}

impl RankReport {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    /// `max |Mᵢⱼ + Mⱼᵢ|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.size();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.matrix[i][j] + self.matrix[j][i]).abs());
            }
        }
        worst
    }
}

/// Independent-of-construction diagnostics around the seam on the fold.
#[derive(Debug, Clone, Serialize)]
pub struct SeamDiagnostics {
    pub gap: f64,
    /// `α` paired with the induced seam tangent.
    pub alpha_on_tangent: f64,
    /// `(dt − Σ zᵢ dyᵢ)` on the tangent lifted by `t = φ(y)`.
    pub jet_pairing: f64,
    pub tangent: CollarTangent,
}

/// Which side of the fold a potential-generated graph occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `r > 0`, `y = softmax(z)`.
    Plus,
    /// `r < 0`, `z = Π(y)`.
    Minus,
}

#[derive(Debug, Clone)]
pub enum GraphSeed {
    Logits(Logits),
    Probabilities(Probabilities),
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Dimension { expected, actual });
    }
    Ok(())
}

/// `α(v) = Σ zᵢ δyᵢ(v)`.
pub fn alpha_pair(point: &CollarPoint, v: &CollarTangent) -> Result<f64> {
    check_dim(point.dim(), v.dim())?;
    Ok(dot(point.z.as_slice(), &v.dy))
}

/// `dα(v, w) = Σ [δzᵢ(v) δyᵢ(w) − δzᵢ(w) δyᵢ(v)]`; constant coefficients.
pub fn dalpha_pair(v: &CollarTangent, w: &CollarTangent) -> Result<f64> {
    check_dim(v.dim(), w.dim())?;
    Ok(dot(&v.dz, &w.dy) - dot(&w.dz, &v.dy))
}

/// `ω_q(v, w) = δr(v) α(w) − δr(w) α(v) + r² dα(v, w)`.
pub fn omega_q_pair(point: &CollarPoint, v: &CollarTangent, w: &CollarTangent) -> Result<f64> {
    let av = alpha_pair(point, v)?;
    let aw = alpha_pair(point, w)?;
    let r = point.r;
    Ok(v.dr * aw - w.dr * av + r * r * dalpha_pair(v, w)?)
}

/// The coordinate basis `(∂r; eᵢ − e_d for i < d; ∂z₁..∂z_d)`, size `2d`.
pub fn collar_basis(d: usize) -> Vec<CollarTangent> {
    let mut basis = vec![CollarTangent::radial(d)];
    basis.extend((0..d - 1).map(|i| CollarTangent::simplex_basis(d, i)));
    basis.extend((0..d).map(|i| CollarTangent::logit_basis(d, i)));
    basis
}

/// The basis of the shift quotient: zero-mean logit directions `∂zᵢ − ∂z_d`, size `2d − 1`.
pub fn quotient_basis(d: usize) -> Vec<CollarTangent> {
    let mut basis = vec![CollarTangent::radial(d)];
    basis.extend((0..d - 1).map(|i| CollarTangent::simplex_basis(d, i)));
    basis.extend((0..d - 1).map(|i| {
        let mut t = CollarTangent::logit_basis(d, i);
        t.dz[d - 1] = -1.0;
        t
    }));
    basis
}

/// Gram matrix of `ω_q` on `basis` at `point`.
pub fn assemble_omega_q(point: &CollarPoint, basis: &[CollarTangent]) -> Result<DMatrix<f64>> {
    let n = basis.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = omega_q_pair(point, &basis[i], &basis[j])?;
            m[(i, j)] = v;
            m[(j, i)] = -v;
        }
    }
    Ok(m)
}

/// `ω_q` on the full `2d`-dimensional coordinate space.
pub fn omega_q_matrix(point: &CollarPoint) -> RankReport {
    omega_q_matrix_with_tolerance(point, DEFAULT_RANK_TOLERANCE)
}

pub fn omega_q_matrix_with_tolerance(point: &CollarPoint, relative_tolerance: f64) -> RankReport {
    let d = point.dim();
    let basis = collar_basis(d);
    let mut shift = vec![0.0; 2 * d];
    shift[d..].iter_mut().for_each(|v| *v = 1.0);
    rank_report(point, &basis, Some(&shift), relative_tolerance)
}

/// `ω_q` restricted to zero-mean logit directions.
pub fn omega_q_quotient_matrix(point: &CollarPoint) -> RankReport {
    let basis = quotient_basis(point.dim());
    rank_report(point, &basis, None, DEFAULT_RANK_TOLERANCE)
}

fn rank_report(
    point: &CollarPoint,
    basis: &[CollarTangent],
    shift_coords: Option<&[f64]>,
    relative_tolerance: f64,
) -> RankReport {
    let d = point.dim();
    // basis and point share d by construction
    let m = assemble_omega_q(point, basis).expect("basis matches point dimension");
    let (rank, tolerance_used, kernel) = linalg::svd_rank_and_kernel(&m, relative_tolerance);
    let norm = linalg::inf_norm(&m);
    let shift_residual = shift_coords.map(|s| linalg::mat_vec_inf(&m, s));
    let shift_in_kernel = shift_residual.is_none_or(|res| res <= 1e-8 * norm);
    RankReport {
        matrix: m.row_iter().map(|r| r.iter().copied().collect()).collect(),
        rank,
        kernel_basis: kernel
            .iter()
            .map(|c| CollarTangent::combination(d, basis, c))
            .collect(),
        tolerance_used,
        shift_residual,
        shift_in_kernel,
    }
}

/// `|dα(v, w) − [v(α(w)) − w(α(v))]|` with central differences along constant fields.
pub fn validate_dalpha_by_finite_differences(
    point: &CollarPoint,
    v: &CollarTangent,
    w: &CollarTangent,
    h: f64,
) -> Result<f64> {
    if !(1e-7..=1e-3).contains(&h) {
        return domain(format!("finite-difference step {h:e} outside [1e-7, 1e-3]"));
    }
    let directional = |along: &CollarTangent, of: &CollarTangent| -> Result<f64> {
        let fwd = alpha_pair(&point.displaced(along, h)?, of)?;
        let bwd = alpha_pair(&point.displaced(along, -h)?, of)?;
        Ok((fwd - bwd) / (2.0 * h))
    };
    let fd = directional(v, w)? - directional(w, v)?;
    Ok((dalpha_pair(v, w)? - fd).abs())
}

/// `Jᵢⱼ = yᵢ (δᵢⱼ − yⱼ)`, row-major.
pub fn softmax_jacobian(y: &Probabilities) -> Vec<Vec<f64>> {
    let p = y.as_slice();
    p.iter()
        .enumerate()
        .map(|(i, &pi)| {
            p.iter()
                .enumerate()
                .map(|(j, &pj)| pi * (if i == j { 1.0 } else { 0.0 } - pj))
                .collect()
        })
        .collect()
}

/// Diagnostics for the seam tangent induced by perturbing logits by `z_dot` at a fold point.
pub fn seam_diagnostics(point: &CollarPoint, z_dot: &[f64]) -> Result<SeamDiagnostics> {
    if point.r != 0.0 {
        return domain(format!("seam diagnostics need r = 0, got {}", point.r));
    }
    check_dim(point.dim(), z_dot.len())?;
    let gap = fenchel_young_gap(&point.z, &point.y)?.gap;
    let on_seam_y = softmax(&point.z);
    // J ż = y ⊙ (ż − ⟨y, ż⟩𝟏)
    let mean = dot(on_seam_y.as_slice(), z_dot);
    let dy: Vec<f64> = on_seam_y
        .as_slice()
        .iter()
        .zip(z_dot)
        .map(|(yi, zi)| yi * (zi - mean))
        .collect();
    let tangent = CollarTangent::new(0.0, dy, z_dot.to_vec())?;
    let alpha_on_tangent = alpha_pair(point, &tangent)?;
    let dphi: f64 = point
        .y
        .as_slice()
        .iter()
        .zip(&tangent.dy)
        .map(|(yi, dyi)| (yi.ln() + 1.0) * dyi)
        .sum();
    Ok(SeamDiagnostics {
        gap,
        alpha_on_tangent,
        jet_pairing: dphi - alpha_on_tangent,
        tangent,
    })
}

/// A point of `L₊` (from logits) or `L₋` (from probabilities) at height `r`.
pub fn lagrangian_graph_point(side: Side, r: f64, seed: GraphSeed) -> Result<CollarPoint> {
    match (side, seed) {
        (Side::Plus, GraphSeed::Logits(z)) => {
            if !(r > 0.0) {
                return domain(format!("L+ lives at r > 0, got {r}"));
            }
            CollarPoint::new(r, softmax(&z), z)
        }
        (Side::Minus, GraphSeed::Probabilities(y)) => {
            if !(r < 0.0) {
                return domain(format!("L- lives at r < 0, got {r}"));
            }
            let z = grad_potential(&y)?.to_logits();
            CollarPoint::new(r, y, z)
        }
        (Side::Plus, GraphSeed::Probabilities(_)) => domain("L+ is seeded by logits"),
        (Side::Minus, GraphSeed::Logits(_)) => domain("L- is seeded by probabilities"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::two_class_sigmoid;

    fn point(r: f64, y: &[f64], z: &[f64]) -> CollarPoint {
        CollarPoint::new(
            r,
            Probabilities::new(y.to_vec()).unwrap(),
            Logits::new(z.to_vec()).unwrap(),
        )
        .unwrap()
    }

    fn tangent(dr: f64, dy: &[f64], dz: &[f64]) -> CollarTangent {
        CollarTangent::new(dr, dy.to_vec(), dz.to_vec()).unwrap()
    }

    #[test]
    fn tangent_constraint_enforced() {
        assert!(CollarTangent::new(0.0, vec![1.0, 0.0], vec![0.0, 0.0]).is_err());
        assert!(CollarTangent::new(0.0, vec![1.0, -1.0], vec![0.0]).is_err());
        assert!(point_result(&[1e-13, 1.0 - 1e-13]).is_err());
    }

    fn point_result(y: &[f64]) -> Result<CollarPoint> {
        CollarPoint::new(
            0.0,
            Probabilities::new(y.to_vec()).unwrap(),
            Logits::zeros(y.len()).unwrap(),
        )
    }

    #[test]
    fn alpha_examples() {
        let p = point(0.3, &[0.2, 0.5, 0.3], &[1.0, -2.0, 0.5]);
        assert_eq!(alpha_pair(&p, &tangent(2.0, &[0.0; 3], &[1.0, 2.0, 3.0])).unwrap(), 0.0);

        let delta = 1.3;
        let h = 0.01;
        let p2 = point(0.0, &[0.4, 0.6], &[delta / 2.0, -delta / 2.0]);
        let a = alpha_pair(&p2, &tangent(0.0, &[h, -h], &[0.0, 0.0])).unwrap();
        assert!((a - delta * h).abs() < 1e-15);

        let (du, dv) = (0.03, -0.07);
        let z = [0.9, -0.4, 1.6];
        let p3 = point(0.0, &[0.2, 0.5, 0.3], &z);
        let expect = (z[0] - z[2]) * du + (z[1] - z[2]) * dv;
        assert!((alpha_pair(&p3, &tangent(0.0, &[du, dv, -du - dv], &[0.0; 3])).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn dalpha_examples() {
        let v = tangent(0.5, &[0.1, -0.3, 0.2], &[1.0, 0.0, -2.0]);
        assert_eq!(dalpha_pair(&v, &v).unwrap(), 0.0);
        let shift = CollarTangent::bias_shift(3);
        assert!(dalpha_pair(&shift, &v).unwrap().abs() < 1e-16);
        let v2 = tangent(0.0, &[0.0, 0.0], &[1.0, 0.0]);
        let w2 = tangent(0.0, &[1.0, -1.0], &[0.0, 0.0]);
        assert_eq!(dalpha_pair(&v2, &w2).unwrap(), 1.0);
    }

    #[test]
    fn omega_examples() {
        let p = point(0.0, &[0.3, 0.7], &[0.8, -0.1]);
        let v = tangent(0.0, &[0.2, -0.2], &[1.0, 0.3]);
        let w = tangent(0.0, &[-0.5, 0.5], &[0.0, 2.0]);
        assert_eq!(omega_q_pair(&p, &v, &w).unwrap(), 0.0);

        let (r, delta, h) = (0.7, -1.4, 0.05);
        let p = point(r, &[0.3, 0.7], &[delta / 2.0, -delta / 2.0]);
        let radial = CollarTangent::radial(2);
        let dp = tangent(0.0, &[h, -h], &[0.0, 0.0]);
        assert!((omega_q_pair(&p, &radial, &dp).unwrap() - delta * h).abs() < 1e-15);
        let v = tangent(0.0, &[0.0, 0.0], &[1.0, 0.0]);
        let w = tangent(0.0, &[1.0, -1.0], &[0.0, 0.0]);
        assert!((omega_q_pair(&p, &v, &w).unwrap() - r * r).abs() < 1e-15);
    }

    #[test]
    fn matrix_examples_two_class() {
        let s = two_class_sigmoid(1.0);
        let p = point(1.0, &[s, 1.0 - s], &[0.5, -0.5]);
        let rep = omega_q_matrix(&p);
        assert_eq!(rep.size(), 4);
        assert_eq!(rep.rank, 2);
        assert_eq!(rep.kernel_dim(), 2);
        assert!(rep.shift_in_kernel);
        assert_eq!(rep.antisymmetry_defect(), 0.0);
        let m = nalgebra::DMatrix::from_fn(4, 4, |i, j| rep.matrix[i][j]);
        let norm = linalg::inf_norm(&m);
        let basis = collar_basis(2);
        for k in &rep.kernel_basis {
            // back to coordinates: (dr, dy_1, dz_1, dz_2)
            let coords = [k.dr, k.dy()[0], k.dz[0], k.dz[1]];
            assert!(linalg::mat_vec_inf(&m, &coords) <= 1e-8 * norm);
        }
        assert_eq!(basis.len(), 4);

        let flat = point(0.0, &[0.5, 0.5], &[0.0, 0.0]);
        let rep = omega_q_matrix(&flat);
        assert_eq!(rep.rank, 0);
        assert_eq!(rep.kernel_dim(), 4);
    }

    #[test]
    fn quotient_matrix_drops_shift() {
        let p = point(0.5, &[0.2, 0.3, 0.5], &[0.4, -1.0, 0.3]);
        let full = omega_q_matrix(&p);
        let quot = omega_q_quotient_matrix(&p);
        assert_eq!(quot.size(), 5);
        assert_eq!(full.rank, quot.rank);
        assert_eq!(quot.rank + quot.kernel_dim(), 5);
        assert!(quot.shift_residual.is_none());
    }

    #[test]
    fn finite_difference_check() {
        let p = point(0.2, &[0.2, 0.5, 0.3], &[1.0, -2.0, 0.5]);
        let v = tangent(0.3, &[0.5, -0.25, -0.25], &[0.1, 0.4, -0.6]);
        let w = tangent(-0.1, &[-0.2, 0.6, -0.4], &[0.7, 0.0, 0.2]);
        assert_eq!(validate_dalpha_by_finite_differences(&p, &v, &v, 1e-5).unwrap(), 0.0);
        assert!(validate_dalpha_by_finite_differences(&p, &v, &w, 1e-5).unwrap() <= 1e-6);
        assert!(validate_dalpha_by_finite_differences(&p, &v, &w, 1e-2).is_err());
        assert!(validate_dalpha_by_finite_differences(&p, &v, &w, 1e-8).is_err());
    }

    #[test]
    fn seam_examples() {
        let on = point(0.0, &[0.5, 0.5], &[0.0, 0.0]);
        let diag = seam_diagnostics(&on, &[1.0, 0.0]).unwrap();
        assert_eq!(diag.alpha_on_tangent, 0.0);

        let s = two_class_sigmoid(1.0);
        let on = point(0.0, &[s, 1.0 - s], &[0.5, -0.5]);
        let diag = seam_diagnostics(&on, &[1.0, -1.0]).unwrap();
        // 2 σ(1)(1 − σ(1)), 50-digit reference
        assert!((diag.alpha_on_tangent - 0.393_223_866_482_963_705_074_849_5).abs() < 1e-12);
        assert!(diag.jet_pairing.abs() < 1e-10);
        assert!(diag.gap < 1e-15);

        let off = point(0.0, &[0.8, 0.2], &[0.5, -0.5]);
        assert!(seam_diagnostics(&off, &[1.0, -1.0]).unwrap().gap > 1e-3);
        let lifted = point(0.1, &[0.5, 0.5], &[0.0, 0.0]);
        assert!(seam_diagnostics(&lifted, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn jacobian_closed_form() {
        let y = Probabilities::new(vec![0.2, 0.3, 0.5]).unwrap();
        let j = softmax_jacobian(&y);
        assert!((j[0][0] - 0.16).abs() < 1e-16);
        assert!((j[0][1] + 0.06).abs() < 1e-16);
        for row in &j {
            assert!(row.iter().sum::<f64>().abs() < 1e-16);
        }
    }

    #[test]
    fn graph_points() {
        let plus = lagrangian_graph_point(Side::Plus, 0.1, GraphSeed::Logits(Logits::zeros(3).unwrap())).unwrap();
        assert!(plus.y().as_slice().iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-16));

        let p: f64 = 0.35;
        let half = 0.5 * (p / (1.0 - p)).ln();
        let y = Probabilities::new(vec![p, 1.0 - p]).unwrap();
        let minus = lagrangian_graph_point(Side::Minus, -0.1, GraphSeed::Probabilities(y.clone())).unwrap();
        assert!((minus.z().as_slice()[0] - half).abs() < 1e-15);
        assert!((minus.z().as_slice()[1] + half).abs() < 1e-15);

        assert!(lagrangian_graph_point(Side::Plus, -0.1, GraphSeed::Logits(Logits::zeros(2).unwrap())).is_err());
        assert!(lagrangian_graph_point(Side::Minus, 0.1, GraphSeed::Probabilities(y.clone())).is_err());
        assert!(lagrangian_graph_point(Side::Plus, 0.1, GraphSeed::Probabilities(y)).is_err());
    }
}
