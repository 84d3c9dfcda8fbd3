use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::Command;

use slelong_cli::io::{parse_polytope, polytope_json};
use slelong_core::cones::AngularCone;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn slelong_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_slelong"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn slelong(args: &[&str]) -> Run {
    slelong_env(args, &[])
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

const SQUARE: &str = r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#;
// integrable z₁ whose exponent lies outside the Γ-hull at m = 4, γ = 0
const PENTAGON: &str = r#"{"vertices": [["0","0"],["5/9","2/9"],["2/3","8/9"],["1/3","8/9"],["2/9","7/9"]]}"#;

#[test]
fn example41_reports_the_four_cells() {
    let r = slelong(&["example41", "-m", "4", "-a", "0.1", "-b", "0.8", "-k", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r.stdout);
    assert_eq!(v["schema_version"], 1);
    let text = r.stdout.to_string();
    assert!(text.contains("0.125"), "{text}");
}

#[test]
fn example41_rejects_small_m() {
    let r = slelong(&["example41", "-m", "3", "-a", "0.1", "-b", "0.8", "-k", "4"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("m ≥ 4 required"), "{}", r.stderr);
}

#[test]
fn verify_passes_on_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "square.json", SQUARE);
    let r = slelong(&["--exact", "verify", "--polytope", p.to_str().unwrap(), "-m", "2"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let v = json(&r.stdout);
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_fails_on_the_pentagon() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "pentagon.json", PENTAGON);
    let r = slelong(&["--exact", "verify", "--polytope", p.to_str().unwrap(), "-m", "4"]);
    assert_eq!(r.code, 1, "{}{}", r.stdout, r.stderr);
    assert_eq!(json(&r.stdout)["pass"], false);
}

#[test]
fn malformed_input_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", r#"{"vertices": [[0,0],[1,"x"]]}"#);
    let r = slelong(&["classify", "--polytope", p.to_str().unwrap(), "-m", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("vertices"), "{}", r.stderr);

    let sq = write(dir.path(), "square.json", SQUARE);
    let r = slelong(&["classify", "--polytope", sq.to_str().unwrap(), "-m", "2", "--gamma=-1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("gamma"), "{}", r.stderr);
}

#[test]
fn classify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "quad.json", &slelong(&["shape", "quad", "0.1", "0.8"]).stdout);
    let args = ["classify", "--polytope", p.to_str().unwrap(), "-m", "4"];
    let a = slelong(&args);
    let b = slelong_env(&args, &[("SLELONG_THREADS", "1")]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let header = a.stdout.lines().next().unwrap();
    assert_eq!(header, "alpha,in_ms,hull,status,max_face,distance");
    assert!(a.stdout.lines().any(|l| l.starts_with("1 0,")));
}

#[test]
fn suite_depends_only_on_the_seed() {
    let args = ["--seed", "5", "suite", "--count", "2", "--max-m", "2"];
    let a = slelong(&args);
    let b = slelong_env(&args, &[("SLELONG_THREADS", "2")]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.code, b.code);
    let c = slelong(&["--seed", "6", "suite", "--count", "2", "--max-m", "2"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn polytope_json_round_trips() {
    let r = slelong(&["shape", "quad", "1/10", "4/5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let p = parse_polytope(&r.stdout).unwrap();
    let again = parse_polytope(&polytope_json(&p).to_string()).unwrap();
    assert_eq!(p, again);
    let float = parse_polytope(r#"{"vertices": [[0,0],[0.5,0],[0,0.25]]}"#).unwrap();
    assert_eq!(float, parse_polytope(&polytope_json(&float).to_string()).unwrap());
}

#[test]
fn norm_of_a_divergent_monomial() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "square.json", SQUARE);
    let r = slelong(&["norm", "--polytope", p.to_str().unwrap(), "-m", "1", "--alpha", "0,0", "--method", "closed"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r.stdout);
    assert_eq!(v["value"], "inf");
}

#[test]
fn coeff_recovers_a_term() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "f.json",
        r#"{"dim": 2, "terms": [{"alpha": [1,2], "re": 1.0}, {"alpha": [0,0], "re": -2.0, "im": 0.5}]}"#,
    );
    let r = slelong(&["coeff", "--poly", p.to_str().unwrap(), "--alpha", "1,2", "--sigma", "0,0", "--tau", "0.5,0.5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("1"), "{}", r.stdout);
}

#[test]
fn decay_outside_and_inside_the_hull() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "quad.json", &slelong(&["shape", "quad", "0.1", "0.8"]).stdout);
    let path = p.to_str().unwrap();
    let r = slelong(&["decay", "--polytope", path, "-m", "4", "--alpha", "4,0"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let r = slelong(&["decay", "--polytope", path, "-m", "4", "--alpha", "0,2"]);
    assert_eq!(r.code, 2);
}

fn svg_paths<'a>(doc: &'a roxmltree::Document, class: &str) -> Vec<&'a str> {
    doc.descendants()
        .filter(|n| n.attribute("class") == Some(class))
        .filter_map(|n| n.attribute("d"))
        .collect()
}

fn numbers(d: &str) -> Vec<f64> {
    d.split_whitespace().filter_map(|t| t.parse().ok()).collect()
}

#[test]
fn figure_is_well_formed_svg() {
    let r = slelong(&["figure", "--quad", "0.1,0.8", "-m", "4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = roxmltree::Document::parse(&r.stdout).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let labels: Vec<_> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("vertex-label"))
        .filter_map(|n| n.text())
        .collect();
    for want in ["(0, 0)", "(0, m)", "(ma, 0)", "(mb, m(1−b))"] {
        assert!(labels.contains(&want), "{labels:?}");
    }
    assert_eq!(svg_paths(&doc, "gamma").len(), 1);
    assert_eq!(svg_paths(&doc, "fan-cell").len(), 4);
}

#[test]
fn figure_rejects_three_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "simplex.json", &slelong(&["shape", "simplex", "3"]).stdout);
    let r = slelong(&["figure", "--polytope", p.to_str().unwrap(), "-m", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("figures are 2D only"), "{}", r.stderr);
}

#[test]
fn wedge_matches_cone_membership() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "square.json", SQUARE);
    let theta = 3.0 * PI / 4.0;
    let cone = write(dir.path(), "cone.json", &format!(r#"{{"half_angle": {theta}}}"#));
    let r = slelong(&[
        "figure",
        "--polytope",
        sq.to_str().unwrap(),
        "-m",
        "1",
        "--cone",
        cone.to_str().unwrap(),
        "--what",
        "gamma",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = roxmltree::Document::parse(&r.stdout).unwrap();
    let d = svg_paths(&doc, "gamma")[0];
    assert!(d.starts_with("M ") && d.contains(" A "), "{d}");
    // M cx cy L x0 y0 A r r 0 large 0 x1 y1 Z
    let v = numbers(d);
    let (cx, cy) = (v[0], v[1]);
    let angle = |x: f64, y: f64| (-(y - cy)).atan2(x - cx);
    let start = angle(v[2], v[3]);
    let end = angle(v[9], v[10]);
    let large = v[7];
    assert!((start + PI / 2.0).abs() < 0.02, "{start}");
    assert!((end.abs() - PI).abs() < 0.02, "{end}");
    assert_eq!(large, 1.0);

    // swept counterclockwise from start: inside exactly when the cone contains the direction
    let ac = AngularCone::new(2, theta).unwrap();
    for i in 0..360 {
        let phi = (i as f64 + 0.5) * PI / 180.0;
        let swept = (phi - start).rem_euclid(2.0 * PI) <= 1.5 * PI;
        assert_eq!(swept, ac.contains(&[phi.cos(), phi.sin()]), "phi = {phi}");
    }
}

#[test]
fn square_hull_overlay_is_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "square.json", SQUARE);
    let r = slelong(&["figure", "--polytope", sq.to_str().unwrap(), "-m", "2", "--what", "hull"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = roxmltree::Document::parse(&r.stdout).unwrap();
    let points = |class: &str| -> Vec<(i64, i64)> {
        let n = doc
            .descendants()
            .find(|n| n.attribute("class") == Some(class))
            .unwrap_or_else(|| panic!("no {class}"));
        let raw = n.attribute("points").or_else(|| n.attribute("d")).unwrap();
        let nums: Vec<f64> = raw
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter_map(|t| t.parse().ok())
            .collect();
        let mut pts: Vec<(i64, i64)> = nums.chunks(2).map(|c| ((c[0] * 10.0).round() as i64, (c[1] * 10.0).round() as i64)).collect();
        pts.sort();
        pts.dedup();
        pts
    };
    assert_eq!(points("polytope"), points("hull"));
}

#[test]
fn out_dir_receives_the_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let r = slelong(&["--out", dir.path().to_str().unwrap(), "shape", "square"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let written: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(written.len(), 1);
}
