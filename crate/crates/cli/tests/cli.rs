use std::process::{Command, Output};

use seam_core::figures::FigureDataset;

fn seam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seam")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["figure", "two-class", "--range", "-1:1", "--range", "0:1"][..],
        &["figure", "two-class", "--resolution", "1"],
        &["figure", "three-class", "--range", "2:1", "--range", "0:1"],
        &["flow", "--dim", "1"],
        &["flow", "--logits", "1,0", "--y0", "0.5,0.6"],
        &["flow", "--dim", "4", "--barycentric"],
        &["verify", "--samples", "0"],
        &["verify", "nonsense"],
        &["bogus"],
    ] {
        assert_eq!(seam(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn two_class_csv_and_seam_sibling() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("field.csv");
    let o = seam(&["figure", "two-class", "--resolution", "11", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema: two-class-gap v1"));
    assert_eq!(lines.next(), Some("delta,p,gap,on_seam"));
    let (_, _, rows) = FigureDataset::parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 121);
    let seam_text = std::fs::read_to_string(dir.path().join("field.seam.csv")).unwrap();
    assert!(seam_text.starts_with("# schema: two-class-seam v1\ndelta,p\n"));
    assert_eq!(seam_text.lines().count(), 2 + 11);
}

#[test]
fn two_class_default_grid_hits_known_rows() {
    let o = seam(&["figure", "two-class", "--range", "-1:1", "--range", "0.1:0.9", "--resolution", "3"]);
    assert!(o.status.success());
    let (_, _, rows) = FigureDataset::parse_csv(&stdout(&o)).unwrap();
    // (Δ, p) = (0, 0.5) is the centre row; (0, 0.9) its last neighbour
    assert_eq!(rows[4][..2], [0.0, 0.5]);
    assert_eq!(rows[4][2..], [0.0, 1.0]);
    let expected = 0.9 * 1.8f64.ln() + 0.1 * 0.2f64.ln();
    assert!((rows[5][2] - expected).abs() < 1e-15);
}

#[test]
fn json_carries_metadata() {
    let o = seam(&["figure", "three-class", "--resolution", "3", "--format", "json", "--seed", "9"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "three-class-simplex");
    assert_eq!(v["columns"].as_array().unwrap().len(), 7);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
    assert_eq!(v["metadata"]["seed"], 9);
    assert_eq!(v["metadata"]["command"], "figure three-class");
}

#[test]
fn svg_outputs_parse() {
    let dir = tempfile::tempdir().unwrap();
    for (args, name) in [
        (&["figure", "two-class", "--resolution", "21"][..], "a.svg"),
        (&["figure", "three-class", "--resolution", "9"], "b.svg"),
        (&["flow", "--barycentric"], "c.svg"),
    ] {
        let path = dir.path().join(name);
        let mut full = args.to_vec();
        full.extend(["--format", "svg", "--out", path.to_str().unwrap()]);
        assert!(seam(&full).status.success(), "{args:?}");
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap();
        assert_eq!(doc.root_element().tag_name().name(), "svg");
    }
}

#[test]
fn flow_from_equilibrium_is_one_row() {
    let z = [1.0f64, 0.0, -1.0];
    let total: f64 = z.iter().map(|v| v.exp()).sum();
    let y0: Vec<String> = z.iter().map(|v| format!("{:.17e}", v.exp() / total)).collect();
    let o = seam(&["flow", "--logits", "1,0,-1", "--y0", &y0.join(",")]);
    assert!(o.status.success());
    let (schema, cols, rows) = FigureDataset::parse_csv(&stdout(&o)).unwrap();
    assert_eq!(schema, "replicator-trace");
    assert_eq!(cols, ["t", "y1", "y2", "y3", "gap"]);
    assert_eq!(rows.len(), 1);
    assert!(rows[0][4] < 1e-15);
}

#[test]
fn two_class_flow_gap_is_monotone() {
    let o = seam(&["flow", "--logits", "1,0", "--y0", "0.5,0.5"]);
    assert!(o.status.success());
    let (_, _, rows) = FigureDataset::parse_csv(&stdout(&o)).unwrap();
    assert!(rows.len() > 2);
    for pair in rows.windows(2) {
        assert!(pair[1][3] <= pair[0][3] + 1e-12);
    }
    assert!(rows.last().unwrap()[3] <= 1e-8);
}

#[test]
fn default_flow_lands_on_softmax() {
    let o = seam(&["flow"]);
    assert!(o.status.success());
    let (_, _, rows) = FigureDataset::parse_csv(&stdout(&o)).unwrap();
    let last = rows.last().unwrap();
    let total = 1f64.exp() + 1.0 + (-1f64).exp();
    let target = [1f64.exp() / total, 1.0 / total, (-1f64).exp() / total];
    for i in 0..3 {
        assert!((last[1 + i] - target[i]).abs() < 1e-4);
    }
    let summary: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(summary["converged"], true);
}

#[test]
fn flow_non_convergence_exits_1_with_partial_trace() {
    let o = seam(&["flow", "--logits", "3,0,-3", "--max-steps", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let (_, _, rows) = FigureDataset::parse_csv(&stdout(&o)).unwrap();
    assert!(!rows.is_empty());
}

#[test]
fn verify_passes_and_fails_with_replay() {
    let ok = seam(&["verify", "duality", "--samples", "50", "--seed", "42"]);
    assert_eq!(ok.status.code(), Some(0));
    let report = stdout(&ok);
    assert!(report.lines().any(|l| l.starts_with("PASS duality.gap_nonnegative")));
    assert!(!report.contains("FAIL"));

    let bad = seam(&["verify", "geometry", "--samples", "20", "--tol-override", "geometry.dalpha_finite_difference=1e-30"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL geometry.dalpha_finite_difference"));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn verify_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = seam(&["verify", "flows", "--samples", "5", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["seed"], 42);
    assert!(v["outcomes"].as_array().unwrap().iter().all(|p| p["passed"] == true));
}
