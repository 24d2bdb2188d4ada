use std::path::PathBuf;
use std::process::{Command, Output};

fn gitcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gitcurve")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", "graphs", &format!("{name}.json")]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn paper_check_passes_and_is_deterministic() {
    let a = gitcurve(&["paper-check", "--json"]);
    let b = gitcurve(&["paper-check", "--json"]);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let m: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(m["failed"], 0);
    let ids: Vec<&str> = m["items"].as_array().unwrap().iter().map(|i| i["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn paper_check_subset() {
    let o = gitcurve(&["paper-check", "--only", "hs-cr-1br", "--json"]);
    assert!(o.status.success());
    let m: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let items = m["items"].as_array().unwrap();
    assert_eq!(items.len(), 13);
    assert!(items.iter().all(|i| i["id"].as_str().unwrap().starts_with("hs-cr-1br/")));
}

#[test]
fn corrupted_expectation_fails_with_exact_value() {
    let o = gitcurve(&["paper-check", "--only", "hs-cr-1br/r5/m2", "--json"]);
    let m: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let good = m["items"][0]["expected"].as_str().unwrap().to_string();
    let bad = good.replace("mu=-1", "mu=-7/3");
    let path = std::env::temp_dir().join(format!("gitcurve-bad-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::json!({ "hs-cr-1br/r5/m2": bad }).to_string()).unwrap();
    let o = gitcurve(&["paper-check", "--only", "hs-cr-1br/r5/m2", "--expectations", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(!o.status.success());
    assert!(stdout(&o).contains("expected mu=-7/3 got mu=-1"), "{}", stdout(&o));
}

#[test]
fn broken_bead_index() {
    let o = gitcurve(&["index", "--family", "broken-bead", "--r", "5", "--m", "2,3", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mus: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["mu"].as_str().unwrap()).collect();
    assert_eq!(mus, ["-1", "-2"]);
}

#[test]
fn classify_fixtures() {
    let o = gitcurve(&["classify", "--in", &fixture("smooth"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["flags"].as_object().unwrap().values().all(|b| b == true));

    let o = gitcurve(&["classify", "--in", &fixture("bridge"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["flags"]["c_semistable"], true);
    assert_eq!(v["flags"]["h_semistable"], false);

    let o = gitcurve(&["classify", "--in", &fixture("tacnodal_tail"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["flags"]["c_semistable"], false);
}

#[test]
fn bad_graph_reports_position() {
    let path = std::env::temp_dir().join(format!("gitcurve-trunc-{}.json", std::process::id()));
    std::fs::write(&path, "{\"components\": [\n  {\"id\": 0,\n").unwrap();
    let o = gitcurve(&["classify", "--in", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn closed_orbit_of_bridge_is_length_two_rosary() {
    let o = gitcurve(&["closed-orbit", "--mode", "c", "--in", &fixture("bridge")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("genera=0,0,2,2 nodes=2 tacnodes=1"), "{out}");
    assert!(out.contains("closed orbit true"));
}

#[test]
fn divisor_epsilon() {
    let o = gitcurve(&["divisor", "epsilon", "--m", "10"]);
    assert_eq!(stdout(&o).trim(), "39/1970");
    let o = gitcurve(&["divisor", "lambda-n", "--n", "2", "--g", "6"]);
    assert_eq!(stdout(&o).trim(), "13 lambda - delta");
}

#[test]
fn degree_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gitcurve"))
        .args(["index", "--family", "broken-bead", "--r", "3", "--m", "2,3"])
        .env("GIT_CURVE_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap 2"));
}

#[test]
fn basin_exponents_per_generator() {
    let o = gitcurve(&["basin", "--family", "multi-rosary", "--g", "8", "--lengths", "2,2", "--exponents", "1,-1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("generic  genera=1,4 nodes=2 tacnodes=1"));
    let o = gitcurve(&["basin", "--family", "open-rosary", "--g", "6", "--r", "3", "--exponents", "-1,-1,-1"]);
    assert!(!o.status.success());
}
