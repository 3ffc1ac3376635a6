use std::fmt::Write;

use super::{FigureDataset, GridSpec, TRIANGLE};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 40.0;

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
}

/// Three-stop ramp from dark blue through teal to yellow, `t ∈ [0, 1]`.
fn ramp(t: f64) -> String {
    const STOPS: [(f64, f64, f64); 3] = [(20.0, 30.0, 90.0), (30.0, 150.0, 140.0), (250.0, 230.0, 60.0)];
    let t = t.clamp(0.0, 1.0) * 2.0;
    let (a, b, s) = if t < 1.0 { (STOPS[0], STOPS[1], t) } else { (STOPS[1], STOPS[2], t - 1.0) };
    let mix = |x: f64, y: f64| (x + (y - x) * s).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// Heatmap of the gap with the seam drawn on top. Color is `√gap` normalized to the grid maximum.
pub fn two_class_svg(field: &FigureDataset, seam: &FigureDataset, grid: &GridSpec) -> String {
    let mut out = String::new();
    header(&mut out, "Two-class Fenchel-Young gap and seam");
    let pw = WIDTH - 2.0 * MARGIN;
    let ph = HEIGHT - 2.0 * MARGIN;
    let sx = |delta: f64| MARGIN + (delta - grid.x.min) / (grid.x.max - grid.x.min) * pw;
    let sy = |p: f64| HEIGHT - MARGIN - (p - grid.y.min) / (grid.y.max - grid.y.min) * ph;
    let cw = pw / grid.x.resolution as f64;
    let ch = ph / grid.y.resolution as f64;
    let max = field.rows.iter().map(|r| r[2]).fold(0.0, f64::max).sqrt().max(f64::MIN_POSITIVE);
    for row in &field.rows {
        let color = ramp(row[2].sqrt() / max);
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{color}"/>"#,
            sx(row[0]) - cw / 2.0,
            sy(row[1]) - ch / 2.0,
            cw + 0.05,
            ch + 0.05,
        );
    }
    let points: Vec<String> = seam
        .rows
        .iter()
        .filter(|r| r[1] >= grid.y.min && r[1] <= grid.y.max)
        .map(|r| format!("{:.2},{:.2}", sx(r[0]), sy(r[1])))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="white" stroke-width="3"/>"#,
        points.join(" ")
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="14">Δ</text><text x="8" y="{}" font-size="14">p</text>"#,
        WIDTH / 2.0,
        HEIGHT - 10.0,
        HEIGHT / 2.0
    );
    out.push_str("</svg>\n");
    out
}

fn triangle_frame(out: &mut String) -> impl Fn(f64, f64) -> (f64, f64) {
    let scale = (WIDTH - 2.0 * MARGIN).min((HEIGHT - 2.0 * MARGIN) / TRIANGLE[2].1);
    let x0 = (WIDTH - scale) / 2.0;
    let y0 = HEIGHT - MARGIN;
    let map = move |bx: f64, by: f64| (x0 + bx * scale, y0 - by * scale);
    let corners: Vec<String> = TRIANGLE
        .iter()
        .map(|&(x, y)| {
            let (u, v) = map(x, y);
            format!("{u:.2},{v:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        corners.join(" ")
    );
    map
}

/// Images of the grid lines `a = const` and `b = const` inside the simplex triangle.
pub fn three_class_svg(dataset: &FigureDataset, grid: &GridSpec) -> String {
    let mut out = String::new();
    header(&mut out, "Three-class softmax image of a centered-logit grid");
    let map = triangle_frame(&mut out);
    let n = grid.y.resolution;
    let at = |i: usize, j: usize| {
        let r = &dataset.rows[i * n + j];
        let (u, v) = map(r[5], r[6]);
        format!("{u:.2},{v:.2}")
    };
    for i in 0..grid.x.resolution {
        let pts: Vec<String> = (0..n).map(|j| at(i, j)).collect();
        let _ = writeln!(out, r##"<polyline points="{}" fill="none" stroke="#1f5fa8" stroke-width="0.7"/>"##, pts.join(" "));
    }
    for j in 0..n {
        let pts: Vec<String> = (0..grid.x.resolution).map(|i| at(i, j)).collect();
        let _ = writeln!(out, r##"<polyline points="{}" fill="none" stroke="#c04a1a" stroke-width="0.7"/>"##, pts.join(" "));
    }
    out.push_str("</svg>\n");
    out
}

/// A `d = 3` trajectory in the triangle when barycentric columns exist, else `yᵢ(t)` curves.
pub fn flow_svg(dataset: &FigureDataset) -> String {
    let mut out = String::new();
    header(&mut out, "Replicator flow");
    if let (Some(bx), Some(by)) = (dataset.column("bary_x"), dataset.column("bary_y")) {
        let map = triangle_frame(&mut out);
        let pts: Vec<String> = dataset
            .rows
            .iter()
            .map(|r| {
                let (u, v) = map(r[bx], r[by]);
                format!("{u:.2},{v:.2}")
            })
            .collect();
        let _ = writeln!(out, r##"<polyline points="{}" fill="none" stroke="#c04a1a" stroke-width="2"/>"##, pts.join(" "));
        out.push_str("</svg>\n");
        return out;
    }
    let t_max = dataset.rows.last().map_or(1.0, |r| r[0]).max(f64::MIN_POSITIVE);
    let pw = WIDTH - 2.0 * MARGIN;
    let ph = HEIGHT - 2.0 * MARGIN;
    let d = dataset.columns.iter().filter(|c| c.starts_with('y')).count();
    for k in 0..d {
        let pts: Vec<String> = dataset
            .rows
            .iter()
            .map(|r| {
                format!(
                    "{:.2},{:.2}",
                    MARGIN + r[0] / t_max * pw,
                    HEIGHT - MARGIN - r[1 + k] * ph
                )
            })
            .collect();
        let color = ramp(k as f64 / (d.max(2) - 1) as f64);
        let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, pts.join(" "));
    }
    out.push_str("</svg>\n");
    out
}
