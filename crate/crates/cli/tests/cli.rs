use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inextensible"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn profile_rows(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let (t, a) = l.split_once(',').unwrap();
            (t.parse().unwrap(), a.parse().unwrap())
        })
        .collect()
}

#[test]
fn analyze_unit_disk() {
    let v = json(&run(&["analyze", "disk:1"]));
    let delta = v["delta"].as_f64().unwrap();
    assert!((delta - 1.5 * 3f64.sqrt()).abs() < 1e-6);
    assert_eq!(v["inextensible"], Value::Bool(true));
    assert!(v["witness_theta"].is_null());
}

#[test]
fn analyze_hexagon_reports_witness_angle() {
    let v = json(&run(&["analyze", "ngon:6:1"]));
    assert_eq!(v["inextensible"], Value::Bool(false));
    assert!(v["witness_theta"].as_f64().is_some());
    assert!((v["area"].as_f64().unwrap() - v["delta"].as_f64().unwrap()).abs() < 1e-9);
}

#[test]
fn hexagon_profile_extremes() {
    let out = run(&["profile", "ngon:6:1", "--n", "360"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theta_rad,area\n"));
    let rows = profile_rows(&text);
    assert_eq!(rows.len(), 360);
    let max = rows.iter().map(|r| r.1).fold(f64::MIN, f64::max);
    let min = rows.iter().map(|r| r.1).fold(f64::MAX, f64::min);
    assert!((max - 0.75 * 3f64.sqrt()).abs() < 1e-9);
    assert!((min - 0.5625 * 3f64.sqrt()).abs() < 1e-9);
}

#[test]
fn profile_values_round_trip_exactly() {
    let text = String::from_utf8(run(&["profile", "ellipse:2:1:0.3", "--n", "24"]).stdout).unwrap();
    for line in text.lines().skip(1) {
        let (t, a) = line.split_once(',').unwrap();
        let (tv, av): (f64, f64) = (t.parse().unwrap(), a.parse().unwrap());
        assert_eq!(format!("{tv:.16e},{av:.16e}"), line);
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["lattice", "ngon:10:1"]);
    let b = run(&["lattice", "ngon:10:1"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let det = v["determinant"].as_f64().unwrap();
    assert!(det > 0.0 && v["basis"].as_array().unwrap().len() == 2);
}

#[test]
fn cover_check_finds_no_holes() {
    let v = json(&run(&["cover-check", "disk:1", "--resolution", "48"]));
    assert_eq!(v["uncovered"].as_array().unwrap().len(), 0);
}

#[test]
fn family_member_and_domain_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("member.json");
    let v = json(&run(&["family", "--s", "0.1", "--domain-out", path.to_str().unwrap()]));
    for (key, want) in [("a", 0.0996729), ("T", 0.0993399), ("X", 0.910311), ("Y", 0.299019)] {
        assert!((v[key].as_f64().unwrap() - want).abs() < 1e-3, "{key}");
    }
    let loaded = json(&run(&["analyze", path.to_str().unwrap()]));
    assert_eq!(loaded["inextensible"], Value::Bool(true));
    assert!((loaded["delta"].as_f64().unwrap() - 1.5 * 3f64.sqrt()).abs() < 1e-6);
}

#[test]
fn file_path_wins_over_shorthand() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("disk:1");
    let square = inextensible::Domain::parallelogram(
        inextensible::Point::new(1.0, 0.0),
        inextensible::Point::new(0.0, 1.0),
    )
    .unwrap();
    std::fs::write(&path, square.to_json()).unwrap();
    let v = json(&run(&["analyze", path.to_str().unwrap()]));
    assert!((v["delta"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "blob:3"]).status.code(), Some(1));
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "ngon:5:1"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "disk:-1"]).status.code(), Some(2));
    assert_eq!(run(&["family", "--s", "0.3"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(1));
    let asym = dir.path().join("asym.json");
    std::fs::write(
        &asym,
        r#"{"pieces":[{"segment":{"from":[2,0],"to":[3,0]}},{"segment":{"from":[3,0],"to":[3,1]}},
            {"segment":{"from":[3,1],"to":[2,1]}},{"segment":{"from":[2,1],"to":[2,0]}}]}"#,
    )
    .unwrap();
    let out = run(&["analyze", asym.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.svg");
    let out = run(&["render", "ngon:8:1", "--triangles", "2", "--lattice", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("<use"));
    assert_eq!(svg.matches("stroke=\"#c0392b\"").count(), 2);
}
