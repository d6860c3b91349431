use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gerstenhaber")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn temp_json(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn group_info_reports_classes() {
    let d8 = data("d8.json");
    let v = run_json(&["group-info", "--group", path(&d8)]);
    assert_eq!(v["order"], 8);
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    assert_eq!(v["kernel"], serde_json::json!(["1"]));
    let z4 = data("z4_kernel.json");
    let v = run_json(&["group-info", "--group", path(&z4)]);
    assert_eq!(v["kernel"].as_array().unwrap().len(), 2);
}

#[test]
fn d8_bracket_is_zero() {
    let (g, a, b) = (data("d8.json"), data("d8_alpha.json"), data("d8_beta.json"));
    let v = run_json(&["bracket", "--group", path(&g), "--cocycle", path(&a), path(&b)]);
    assert_eq!(v["zero"], true);
    assert_eq!(v["invariant_inputs"], false);
}

#[test]
fn kernel_bracket_is_nonzero() {
    let (g, a, b) = (data("z2_trivial.json"), data("z2_a.json"), data("z2_b.json"));
    let v = run_json(&["--jobs", "1", "bracket", "--group", path(&g), "--cocycle", path(&a), path(&b)]);
    assert_eq!(v["zero"], false);
    let terms = v["bracket"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["poly"], "2*x1*x2^3*x3^3");
    assert_eq!(terms[0]["wedge"], serde_json::json!([1, 2, 3]));
}

#[test]
fn bracket_output_round_trips_as_input() {
    let (g, a, b) = (data("z2_trivial.json"), data("z2_a.json"), data("z2_b.json"));
    let v = run_json(&["bracket", "--group", path(&g), "--cocycle", path(&a), path(&b)]);
    let f = temp_json(&v["bracket"].to_string());
    let fp = f.path().to_path_buf();
    let sq = run_json(&["square", "--group", path(&g), "--cocycle", path(&fp)]);
    assert_eq!(sq["zero"], true);
}

#[test]
fn cohomology_basis_and_hecke_agree() {
    let g = data("d8.json");
    let basis = run_json(&["cohomology-basis", "--group", path(&g), "--degree", "2", "--poly-degree", "0"]);
    let hecke = run_json(&["hecke-params", "--group", path(&g)]);
    assert_eq!(basis["dim"], hecke["dim"]);
    assert_eq!(hecke["classes"]["total"], hecke["dim"]);
    assert_eq!(hecke["dim"], 1);
}

#[test]
fn hecke_relations_text() {
    let out = run(&["hecke-params", "--group", path(&data("d8.json"))]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x1*x2 - x2*x1 = g - g^3"), "{text}");
    assert!(text.contains("total 1"), "{text}");
}

#[test]
fn poisson_scan_flags_kernel_support() {
    let g = data("z4_kernel.json");
    let v = run_json(&["poisson-scan", "--group", path(&g), "--poly-degree", "1", "--samples", "2", "--seed", "3"]);
    let items = v["items"].as_array().unwrap();
    assert!(!items.is_empty());
    assert!(items.iter().any(|i| i["on_kernel"] == true));
    for i in items.iter().filter(|i| i["on_kernel"] == false) {
        assert_eq!(i["square_zero"], true, "{i}");
    }
}

#[test]
fn mu1_on_constant_cocycle() {
    let g = data("d8.json");
    let basis = run_json(&["cohomology-basis", "--group", path(&g), "--degree", "2", "--poly-degree", "0"]);
    let f = temp_json(&basis["basis"][0].to_string());
    let fp = f.path().to_path_buf();
    let v = run_json(&["mu1", "--group", path(&g), "--cocycle", path(&fp), "--left", "x1", "--right", "x2"]);
    assert_eq!(v["constant"], true);
    assert!(!v["value"].as_array().unwrap().is_empty());
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--group", path(&data("d8.json")), "--poly-degree", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn exit_codes() {
    let g = data("d8.json");
    let bad = temp_json("{ not json");
    let bp = bad.path().to_path_buf();
    assert_eq!(run(&["group-info", "--group", path(&bp)]).status.code(), Some(2));

    let infinite = temp_json(r#"{ "conductor": 1, "dim": 1, "generators": [[["2"]]], "cap": 64 }"#);
    let ip = infinite.path().to_path_buf();
    assert_eq!(run(&["group-info", "--group", path(&ip)]).status.code(), Some(3));

    let a = data("d8_alpha.json");
    let out = run(&["mu1", "--group", path(&g), "--cocycle", path(&a), "--left", "x1", "--right", "x2"]);
    assert_eq!(out.status.code(), Some(4));

    assert_eq!(run(&["bracket", "--group", path(&g)]).status.code(), Some(2));
}

#[test]
fn non_h_input_is_projected_with_warning() {
    let g = data("d8.json");
    let c = temp_json(r#"{ "terms": [ { "support": "h", "poly": "x2", "wedge": [1, 2] } ] }"#);
    let cp = c.path().to_path_buf();
    let out = run(&["square", "--group", path(&g), "--cocycle", path(&cp)]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
