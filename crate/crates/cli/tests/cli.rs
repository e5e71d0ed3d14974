use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(file)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moment-angle")).args(args).output().expect("binary runs")
}

fn run_on(args: &[&str], file: &str) -> Output {
    let path = corpus(file);
    let mut all = vec![args[0], path.to_str().unwrap()];
    all.extend(&args[1..]);
    run(&all)
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn info_reports() {
    let torus = json(&run_on(&["info", "--json"], "torus9.json"));
    assert_eq!(torus["h_vector"], serde_json::json!([1, 6, 12, -1]));
    assert_eq!(torus["classification"]["cohen_macaulay"], false);
    let pentagon = json(&run_on(&["info", "--json"], "pentagon.json"));
    assert_eq!(pentagon["h_vector"], serde_json::json!([1, 3, 1]));
    assert_eq!(pentagon["classification"]["gorenstein_star"], true);
    let tetra = json(&run_on(&["info", "--json"], "delta3-boundary.json"));
    assert_eq!(tetra["h_vector"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn text_info_is_aligned() {
    let out = run_on(&["info"], "pentagon.json");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("h-vector              (1, 3, 1)"), "{text}");
}

#[test]
fn betti_methods_agree() {
    let out = run_on(&["betti", "--method", "both", "--json"], "pentagon.json");
    let v = json(&out);
    assert_eq!(v["total_betti"], serde_json::json!([1, 0, 0, 5, 5, 0, 0, 1]));
    let hex = json(&run_on(&["betti", "--json"], "hexagon.json"));
    assert_eq!(hex["total_betti"], serde_json::json!([1, 0, 0, 9, 16, 9, 0, 0, 1]));
    let simplex = json(&run_on(&["betti", "--method", "hochster", "--json"], "simplex.json"));
    assert_eq!(simplex["table"], serde_json::json!([{"i": 0, "j": 0, "rank": 1}]));
}

#[test]
fn betti_grid_layout() {
    let out = run_on(&["betti"], "pentagon.json");
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].trim_start().starts_with("10 |"));
    assert!(text.contains("-3 -2 -1  0"));
}

#[test]
fn genus_reports() {
    let std = json(&run_on(&["genus", "--json"], "cp2-standard.json"));
    assert_eq!((std["todd"].as_i64(), std["signature"].as_i64()), (Some(1), Some(1)));
    let alt = json(&run_on(&["genus", "--json", "--nu", "1,2"], "cp2-alt.json"));
    assert_eq!(alt["todd"], 0);
    assert_eq!(alt["signature"], 1);
    assert_eq!(alt["top_chern"], -1);
    let neg = json(&run_on(&["genus", "--json", "--nu", "-1,3"], "cp2-alt.json"));
    assert_eq!(neg["chi_y"], alt["chi_y"]);
}

#[test]
fn genus_rejects_non_generic_vector() {
    let out = run_on(&["genus", "--nu", "0,0"], "cp2-alt.json");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pairs to zero"));
}

#[test]
fn arrangements() {
    let coord = json(&run_on(&["arrangement", "--json"], "three-points.json"));
    assert_eq!(coord["betti"], serde_json::json!([1, 0, 0, 3, 2]));
    let diag = json(&run_on(&["arrangement", "--kind", "diag", "--json"], "simplex.json"));
    assert_eq!(diag["betti"], serde_json::json!([1]));
    let two = json(&run_on(&["arrangement", "--kind", "diag", "--json"], "two-points.json"));
    assert_eq!(two["betti"][0], 2);
}

#[test]
fn arrangement_documents() {
    let dir = std::env::temp_dir().join(format!("ma-cli-arr-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lines.json");
    // all coordinate 2-planes in C^3: the complement of three points' complex
    std::fs::write(&path, r#"{"m": 3, "generators": [[1, 2], [1, 3], [2, 3]]}"#).unwrap();
    let out = run(&["arrangement", path.to_str().unwrap(), "--json"]);
    assert_eq!(json(&out)["betti"], serde_json::json!([1, 0, 0, 3, 2]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let a = run_on(&["info", "--json"], "cyclic-4-8.json");
    let b = run_on(&["info", "--json"], "cyclic-4-8.json");
    assert_eq!(a.stdout, b.stdout);
    let a = run_on(&["betti", "--json", "--jobs", "1"], "octagon.json");
    let b = run_on(&["betti", "--json", "--jobs", "4"], "octagon.json");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_input_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("ma-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\"m\": 3,\n \"facets\": [[1, 2], [2, 4]]}").unwrap();
    let out = run(&["info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside 1..=3"));
    std::fs::write(&path, "{\"m\": 3,\n \"facets\": [[1, 2]\n").unwrap();
    let out = run(&["reproduce", "--corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = run(&["info", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reproduce_filter() {
    let out = run(&["reproduce", "--filter", "genus"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 1);
    assert!(text.contains("cp2 genus data"));
    assert_eq!(run(&["reproduce", "--filter", "nothing-matches"]).status.code(), Some(2));
}

#[test]
fn reproduce_mismatch_exits_with_one() {
    // a corpus without the torus cannot confirm the torus check
    let dir = std::env::temp_dir().join(format!("ma-cli-partial-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(corpus("pentagon.json"), dir.join("pentagon.json")).unwrap();
    let out = run(&["reproduce", "--filter", "torus", "--corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    std::fs::remove_dir_all(&dir).unwrap();
}
