//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Exported functions return flat `Float64Array`/`Uint8ClampedArray` buffers so
//! the page can draw straight onto canvases. The pure versions live in
//! [`panels`] and are what the native tests exercise.

use wasm_bindgen::prelude::*;

pub mod panels;

fn js_err(e: String) -> JsError {
    JsError::new(&e)
}

/// RGBA pixels of the two-class gap field, row 0 at the top (`p = p_max`).
#[wasm_bindgen]
pub fn two_class_gap_image(
    delta_min: f64,
    delta_max: f64,
    p_min: f64,
    p_max: f64,
    width: usize,
    height: usize,
) -> Result<Vec<u8>, JsError> {
    panels::gap_image(delta_min, delta_max, p_min, p_max, width, height).map_err(js_err)
}

/// `(Δ, σ(Δ))` pairs along the seam.
#[wasm_bindgen]
pub fn two_class_seam(delta_min: f64, delta_max: f64, samples: usize) -> Vec<f64> {
    panels::seam_curve(delta_min, delta_max, samples)
}

/// `[gap, rank of ω_q at (r, Δ), α on the seam tangent ż = (1, −1)]` at one point.
#[wasm_bindgen]
pub fn two_class_probe(delta: f64, p: f64, r: f64) -> Result<Vec<f64>, JsError> {
    panels::probe(delta, p, r).map_err(js_err)
}

/// Barycentric `(x, y)` pairs for the grid `(a, b) ∈ [-range, range]²`, row-major in `a`.
#[wasm_bindgen]
pub fn three_class_grid(range: f64, resolution: usize, offset: f64) -> Result<Vec<f64>, JsError> {
    panels::simplex_grid(range, resolution, offset).map_err(js_err)
}

/// Replicator trace rows `(t, y₁..y_d, gap)` flattened; `d = logits.len()`.
#[wasm_bindgen]
pub fn replicator_trace(logits: Vec<f64>, y0: Vec<f64>, tol: f64) -> Result<Vec<f64>, JsError> {
    panels::trace(logits, y0, tol).map_err(js_err)
}
