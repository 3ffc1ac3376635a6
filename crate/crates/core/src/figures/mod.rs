//! Grid datasets for the two- and three-class pictures and replicator traces.
//!
//! Every dataset is a flat table with a schema id. The CSV encoding is
//!
//! ```text
//! # schema: <schema_id> v1
//! col_a,col_b,...
//! <17 significant digits>,...
//! ```
//!
//! and the JSON encoding carries the same columns plus run metadata.

mod svg;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::duality::{
    softmax_slice, two_class_gap, two_class_sigmoid, Logits, Probabilities,
    DEFAULT_SEAM_TOLERANCE,
};
use crate::error::{domain, Result};
use crate::flows::{flow_to_equilibrium, FlowTrace};

pub use svg::{flow_svg, three_class_svg, two_class_svg};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_RESOLUTION_TWO_CLASS: usize = 201;
pub const DEFAULT_RESOLUTION_THREE_CLASS: usize = 41;

/// Triangle vertices used for barycentric plots of the 3-class simplex.
pub const TRIANGLE: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.866_025_403_784_438_6)];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub resolution: usize,
}

impl AxisSpec {
    pub fn new(min: f64, max: f64, resolution: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return domain(format!("axis range [{min}, {max}] is empty or not finite"));
        }
        if resolution < 2 {
            return domain(format!("axis resolution {resolution} < 2"));
        }
        Ok(Self { min, max, resolution })
    }

    /// `min (1 − t) + max t` with `t = i / (n − 1)`; hits both ends exactly.
    pub fn value(&self, i: usize) -> f64 {
        let t = i as f64 / (self.resolution - 1) as f64;
        self.min * (1.0 - t) + self.max * t
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.resolution - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.resolution).map(|i| self.value(i)).collect()
    }
}

/// Two axes; the first varies slowest in row order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub x: AxisSpec,
    pub y: AxisSpec,
}

impl GridSpec {
    pub fn rows(&self) -> usize {
        self.x.resolution * self.y.resolution
    }

    pub fn point(&self, row: usize) -> (f64, f64) {
        let i = row / self.y.resolution;
        let j = row % self.y.resolution;
        (self.x.value(i), self.y.value(j))
    }

    /// `Δ ∈ [−6, 6]`, `p ∈ [0.001, 0.999]`.
    pub fn two_class_default() -> Self {
        let n = DEFAULT_RESOLUTION_TWO_CLASS;
        Self {
            x: AxisSpec { min: -6.0, max: 6.0, resolution: n },
            y: AxisSpec { min: 0.001, max: 0.999, resolution: n },
        }
    }

    /// `(z₁ − z₃, z₂ − z₃) ∈ [−4, 4]²`.
    pub fn three_class_default() -> Self {
        let n = DEFAULT_RESOLUTION_THREE_CLASS;
        let axis = AxisSpec { min: -4.0, max: 4.0, resolution: n };
        Self { x: axis, y: axis }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub tool_version: String,
}

impl Metadata {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed: None,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureDataset {
    pub schema_id: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: Metadata,
}

impl FigureDataset {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# schema: {} v1\n{}\n", self.schema_id, self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "schema": self.schema_id,
            "version": 1,
            "columns": self.columns,
            "rows": self.rows,
            "metadata": self.metadata,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("finite values serialize");
        s.push('\n');
        s
    }

    /// Parses the CSV encoding back; comment and header lines are checked.
    pub fn parse_csv(text: &str) -> Result<(String, Vec<String>, Vec<Vec<f64>>)> {
        let mut lines = text.lines();
        let Some(schema_line) = lines.next() else {
            return domain("empty CSV");
        };
        let Some(rest) = schema_line.strip_prefix("# schema: ") else {
            return domain("missing schema line");
        };
        let Some(schema) = rest.strip_suffix(" v1") else {
            return domain("unsupported schema version");
        };
        let columns: Vec<String> = match lines.next() {
            Some(h) => h.split(',').map(str::to_string).collect(),
            None => return domain("missing header"),
        };
        let mut rows = Vec::new();
        for (k, line) in lines.enumerate() {
            let row: std::result::Result<Vec<f64>, _> = line.split(',').map(str::parse::<f64>).collect();
            match row {
                Ok(r) if r.len() == columns.len() => rows.push(r),
                _ => return domain(format!("malformed row {k}")),
            }
        }
        Ok((schema.to_string(), columns, rows))
    }
}

#[cfg(feature = "parallel")]
fn map_rows<F>(n: usize, f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(usize) -> Result<Vec<f64>> + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_rows<F>(n: usize, f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(usize) -> Result<Vec<f64>>,
{
    (0..n).map(f).collect()
}

fn grid_json(grid: &GridSpec) -> Value {
    json!([
        [grid.x.min, grid.x.max, grid.x.resolution],
        [grid.y.min, grid.y.max, grid.y.resolution],
    ])
}

/// The gap field over `(Δ, p)` together with the sampled seam curve.
#[derive(Debug, Clone)]
pub struct TwoClassFigure {
    pub field: FigureDataset,
    pub seam: FigureDataset,
    pub grid: GridSpec,
}

pub fn figure_two_class(grid: &GridSpec) -> Result<TwoClassFigure> {
    figure_two_class_with_tolerance(grid, DEFAULT_SEAM_TOLERANCE)
}

pub fn figure_two_class_with_tolerance(grid: &GridSpec, seam_tolerance: f64) -> Result<TwoClassFigure> {
    if !(grid.y.min > 0.0 && grid.y.max < 1.0) {
        return domain(format!(
            "p-range [{}, {}] must lie strictly inside (0, 1)",
            grid.y.min, grid.y.max
        ));
    }
    let rows = map_rows(grid.rows(), |row| {
        let (delta, p) = grid.point(row);
        let gap = two_class_gap(delta, p)?;
        let on_seam = if gap <= seam_tolerance { 1.0 } else { 0.0 };
        Ok(vec![delta, p, gap, on_seam])
    })?;
    let metadata = Metadata::new("figure two-class")
        .with("grid", grid_json(grid))
        .with("seam_tolerance", json!(seam_tolerance));
    let seam_rows = grid
        .x
        .values()
        .into_iter()
        .map(|delta| vec![delta, two_class_sigmoid(delta)])
        .collect();
    Ok(TwoClassFigure {
        field: FigureDataset {
            schema_id: "two-class-gap".into(),
            columns: ["delta", "p", "gap", "on_seam"].map(String::from).to_vec(),
            rows,
            metadata: metadata.clone(),
        },
        seam: FigureDataset {
            schema_id: "two-class-seam".into(),
            columns: ["delta", "p"].map(String::from).to_vec(),
            rows: seam_rows,
            metadata,
        },
        grid: *grid,
    })
}

/// Barycentric embedding of a 3-class probability into [`TRIANGLE`].
pub fn barycentric(y: &[f64]) -> (f64, f64) {
    let x = TRIANGLE.iter().zip(y).map(|(v, w)| v.0 * w).sum();
    let h = TRIANGLE.iter().zip(y).map(|(v, w)| v.1 * w).sum();
    (x, h)
}

/// Softmax image of the grid in centered-logit coordinates `(z₁ − z₃, z₂ − z₃)`.
///
/// Raw logits are `(a + offset, b + offset, offset)`; the output depends on the
/// offset only through rounding.
pub fn figure_three_class(grid: &GridSpec, offset: f64) -> Result<FigureDataset> {
    if !offset.is_finite() {
        return domain(format!("offset {offset} is not finite"));
    }
    let rows = map_rows(grid.rows(), |row| {
        let (a, b) = grid.point(row);
        let y = softmax_slice(&[a + offset, b + offset, offset]);
        let (bx, by) = barycentric(&y);
        Ok(vec![a, b, y[0], y[1], y[2], bx, by])
    })?;
    Ok(FigureDataset {
        schema_id: "three-class-simplex".into(),
        columns: ["a", "b", "y1", "y2", "y3", "bary_x", "bary_y"]
            .map(String::from)
            .to_vec(),
        rows,
        metadata: Metadata::new("figure three-class")
            .with("grid", grid_json(grid))
            .with("offset", json!(offset)),
    })
}

#[derive(Debug, Clone)]
pub struct FlowRunConfig {
    pub z: Logits,
    pub y0: Probabilities,
    pub tol: f64,
    pub max_steps: usize,
    pub barycentric: bool,
    pub seed: Option<u64>,
}

pub const MAX_FLOW_DIM: usize = 64;

/// Runs the replicator flow and tabulates `(t, y₁..y_d, gap)`.
pub fn flow_run(config: &FlowRunConfig) -> Result<(FigureDataset, FlowTrace)> {
    let d = config.z.dim();
    if !(2..=MAX_FLOW_DIM).contains(&d) {
        return domain(format!("flow dimension {d} outside [2, {MAX_FLOW_DIM}]"));
    }
    if config.barycentric && d != 3 {
        return domain("barycentric output needs d = 3");
    }
    let trace = flow_to_equilibrium(&config.y0, &config.z, config.tol, config.max_steps)?;
    let mut columns = vec!["t".to_string()];
    columns.extend((1..=d).map(|i| format!("y{i}")));
    columns.push("gap".into());
    if config.barycentric {
        columns.extend(["bary_x".to_string(), "bary_y".to_string()]);
    }
    let rows = trace
        .states
        .iter()
        .map(|s| {
            let mut row = vec![s.t];
            row.extend_from_slice(s.y.as_slice());
            row.push(s.gap);
            if config.barycentric {
                let (bx, by) = barycentric(s.y.as_slice());
                row.extend([bx, by]);
            }
            row
        })
        .collect();
    let mut metadata = Metadata::new("flow")
        .with("dim", json!(d))
        .with("logits", json!(config.z.as_slice()))
        .with("y0", json!(config.y0.as_slice()))
        .with("tol", json!(config.tol))
        .with("max_steps", json!(config.max_steps))
        .with("converged", json!(trace.converged))
        .with("steps", json!(trace.steps))
        .with("final_gap", json!(trace.final_gap));
    metadata.seed = config.seed;
    Ok((
        FigureDataset {
            schema_id: "replicator-trace".into(),
            columns,
            rows,
            metadata,
        },
        trace,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_endpoints_are_exact() {
        let a = AxisSpec::new(-6.0, 6.0, 201).unwrap();
        assert_eq!(a.value(0), -6.0);
        assert_eq!(a.value(200), 6.0);
        assert_eq!(a.value(100), 0.0);
        assert!(AxisSpec::new(1.0, 1.0, 5).is_err());
        assert!(AxisSpec::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn two_class_rows() {
        let fig = figure_two_class(&GridSpec::two_class_default()).unwrap();
        assert_eq!(fig.field.rows.len(), 201 * 201);
        let center = &fig.field.rows[100 * 201 + 100];
        assert_eq!(center[0], 0.0);
        assert!((center[1] - 0.5).abs() < 1e-15);
        assert!(center[2] <= 1e-15 && center[3] == 1.0);

        let grid = GridSpec {
            x: AxisSpec::new(-1.0, 1.0, 3).unwrap(),
            y: AxisSpec::new(0.1, 0.9, 3).unwrap(),
        };
        let fig = figure_two_class(&grid).unwrap();
        let row = &fig.field.rows[1 * 3 + 2];
        assert_eq!((row[0], row[1]), (0.0, 0.9));
        // 0.9 log 1.8 + 0.1 log 0.2 at 50 digits
        assert!((row[2] - 0.368_064_207_168_497_069_910_682_1).abs() < 1e-15);
        assert_eq!(fig.seam.rows.len(), 3);
    }

    #[test]
    fn two_class_rejects_boundary() {
        let grid = GridSpec {
            x: AxisSpec::new(-1.0, 1.0, 3).unwrap(),
            y: AxisSpec::new(0.0, 0.9, 3).unwrap(),
        };
        assert!(figure_two_class(&grid).is_err());
    }

    #[test]
    fn three_class_rows() {
        let ds = figure_three_class(&GridSpec::three_class_default(), 0.0).unwrap();
        assert_eq!(ds.rows.len(), 41 * 41);
        let c = &ds.rows[20 * 41 + 20];
        assert_eq!((c[0], c[1]), (0.0, 0.0));
        assert!((c[5] - 0.5).abs() < 1e-15);
        assert!((c[6] - TRIANGLE[2].1 / 3.0).abs() < 1e-15);
        let corner = &ds.rows[40 * 41 + 20];
        assert_eq!((corner[0], corner[1]), (4.0, 0.0));
        assert!((corner[2] - 0.964_663_155_971_903_901_571_572_7).abs() < 1e-15);
    }

    #[test]
    fn csv_layout() {
        let grid = GridSpec {
            x: AxisSpec::new(-1.0, 1.0, 2).unwrap(),
            y: AxisSpec::new(0.25, 0.75, 2).unwrap(),
        };
        let csv = figure_two_class(&grid).unwrap().field.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# schema: two-class-gap v1"));
        assert_eq!(lines.next(), Some("delta,p,gap,on_seam"));
        assert_eq!(lines.next().unwrap().split(',').next(), Some("-1.0000000000000000e0"));
        let (schema, cols, rows) = FigureDataset::parse_csv(&csv).unwrap();
        assert_eq!(schema, "two-class-gap");
        assert_eq!(cols.len(), 4);
        assert_eq!(rows.len(), 4);
    }

    #[test]
    fn flow_dimension_limits() {
        let cfg = |d: usize| FlowRunConfig {
            z: Logits::zeros(d).unwrap(),
            y0: Probabilities::uniform(d).unwrap(),
            tol: 1e-8,
            max_steps: 10,
            barycentric: false,
            seed: None,
        };
        assert!(flow_run(&cfg(64)).is_ok());
        assert!(flow_run(&cfg(65)).is_err());
        let mut bad = cfg(4);
        bad.barycentric = true;
        assert!(flow_run(&bad).is_err());
    }
}
