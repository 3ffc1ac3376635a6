use seam_core::duality::{two_class_gap, two_class_sigmoid};
use seam_core::figures::{self, AxisSpec, GridSpec};
use seam_core::flows::flow_to_equilibrium;
use seam_core::geometry::{omega_q_matrix, seam_diagnostics, CollarPoint};
use seam_core::{Logits, Probabilities};

const TRACE_MAX_STEPS: usize = 200_000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn color(t: f64) -> [u8; 3] {
    const STOPS: [[f64; 3]; 3] = [[20.0, 30.0, 90.0], [30.0, 150.0, 140.0], [250.0, 230.0, 60.0]];
    let t = t.clamp(0.0, 1.0) * 2.0;
    let (a, b, s) = if t < 1.0 { (STOPS[0], STOPS[1], t) } else { (STOPS[1], STOPS[2], t - 1.0) };
    [0, 1, 2].map(|k| (a[k] + (b[k] - a[k]) * s).round() as u8)
}

pub fn gap_image(
    delta_min: f64,
    delta_max: f64,
    p_min: f64,
    p_max: f64,
    width: usize,
    height: usize,
) -> Result<Vec<u8>, String> {
    if !(p_min > 0.0 && p_max < 1.0 && p_min < p_max && delta_min < delta_max) {
        return Err(format!("bad window Δ∈[{delta_min}, {delta_max}], p∈[{p_min}, {p_max}]"));
    }
    if width == 0 || height == 0 {
        return Err("empty image".into());
    }
    let mut gaps = Vec::with_capacity(width * height);
    for row in 0..height {
        let p = p_max - (row as f64 + 0.5) / height as f64 * (p_max - p_min);
        for col in 0..width {
            let delta = delta_min + (col as f64 + 0.5) / width as f64 * (delta_max - delta_min);
            gaps.push(two_class_gap(delta, p).map_err(err)?.sqrt());
        }
    }
    let max = gaps.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut rgba = Vec::with_capacity(4 * gaps.len());
    for g in gaps {
        let [r, gr, b] = color(g / max);
        rgba.extend([r, gr, b, 255]);
    }
    Ok(rgba)
}

pub fn seam_curve(delta_min: f64, delta_max: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    (0..n)
        .flat_map(|i| {
            let t = i as f64 / (n - 1) as f64;
            let delta = delta_min * (1.0 - t) + delta_max * t;
            [delta, two_class_sigmoid(delta)]
        })
        .collect()
}

pub fn probe(delta: f64, p: f64, r: f64) -> Result<Vec<f64>, String> {
    let gap = two_class_gap(delta, p).map_err(err)?;
    let z = Logits::new(vec![delta / 2.0, -delta / 2.0]).map_err(err)?;
    let y = Probabilities::new(vec![p, 1.0 - p]).map_err(err)?;
    let rank = omega_q_matrix(&CollarPoint::new(r, y.clone(), z.clone()).map_err(err)?).rank;
    let fold = CollarPoint::on_fold(y, z).map_err(err)?;
    let alpha = seam_diagnostics(&fold, &[1.0, -1.0]).map_err(err)?.alpha_on_tangent;
    Ok(vec![gap, rank as f64, alpha])
}

pub fn simplex_grid(range: f64, resolution: usize, offset: f64) -> Result<Vec<f64>, String> {
    let axis = AxisSpec::new(-range, range, resolution).map_err(err)?;
    let ds = figures::figure_three_class(&GridSpec { x: axis, y: axis }, offset).map_err(err)?;
    let (bx, by) = (5, 6);
    Ok(ds.rows.iter().flat_map(|r| [r[bx], r[by]]).collect())
}

pub fn trace(logits: Vec<f64>, y0: Vec<f64>, tol: f64) -> Result<Vec<f64>, String> {
    let z = Logits::new(logits).map_err(err)?;
    let y0 = Probabilities::new(y0).map_err(err)?;
    let trace = flow_to_equilibrium(&y0, &z, tol, TRACE_MAX_STEPS).map_err(err)?;
    Ok(trace
        .states
        .iter()
        .flat_map(|s| {
            std::iter::once(s.t)
                .chain(s.y.as_slice().iter().copied())
                .chain(std::iter::once(s.gap))
        })
        .collect())
}
