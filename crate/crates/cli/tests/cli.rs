use std::path::Path;
use std::process::{Command, Output};

fn stabgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabgeo")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn catalog_passes() {
    let o = stabgeo(&["catalog"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("PASS hoggar ntd"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&stabgeo(&["hist", "--system", "5,1"])), 2);
    assert_eq!(code(&stabgeo(&["hist", "--generator", "gaussian"])), 2);
    assert_eq!(code(&stabgeo(&["hist", "--samples", "0"])), 2);
    assert_eq!(code(&stabgeo(&["hist", "--tol", "-1"])), 2);
    assert_eq!(code(&stabgeo(&["nonsense"])), 2);
    assert_eq!(code(&stabgeo(&["facet-audit", "--system", "2,3", "--samples", "3"])), 2);
    assert_eq!(code(&stabgeo(&["--config", "/nonexistent/cfg.json", "hist"])), 2);
}

#[test]
fn hist_csv_is_reproducible_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let common = ["hist", "--system", "2,2", "--samples", "40", "--seed", "9"];
    let o = stabgeo(&[&common[..], &["--workers", "1", "--out", a.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 0);
    let o = stabgeo(&[&common[..], &["--workers", "3", "--out", b.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 0);
    let (ta, tb) = (read(&a), read(&b));
    assert_eq!(ta, tb);
    let lines: Vec<&str> = ta.lines().collect();
    assert_eq!(lines[0], "id,hash,ntd,ntd_lower,gap,certified");
    assert_eq!(lines.len(), 41);
    assert!(!dir.path().join("a.csv.ckpt").exists());
}

#[test]
fn json_output_parses_and_config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"system": "2,1", "samples": 25, "seed": 4, "generator": "hs", "format": "json"}"#).unwrap();
    let out = dir.path().join("r.json");
    let o = stabgeo(&["--config", cfg.to_str().unwrap(), "--samples", "12", "--out", out.to_str().unwrap(), "compare"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(v["command"], "compare");
    assert_eq!(v["config"]["system"], "2,1");
    assert_eq!(v["config"]["generator"], "hs");
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 12);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"sample": 25}"#).unwrap();
    assert_eq!(code(&stabgeo(&["--config", cfg.to_str().unwrap(), "hist"])), 2);
}

#[test]
fn hull_file_round_trips_through_import() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("oct.facets");
    let o = stabgeo(&["hull", "--projection", "octahedron", "--out", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = read(&f);
    assert!(text.starts_with("# words: X Y Z"));
    assert_eq!(text.lines().count(), 9);
    let o = stabgeo(&["facets", "import", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    let bad = dir.path().join("bad.facets");
    std::fs::write(&bad, "# words: X Y Z\n0 1 0 0\n").unwrap();
    assert_eq!(code(&stabgeo(&["facets", "import", bad.to_str().unwrap()])), 1);
    let garbled = dir.path().join("garbled.facets");
    std::fs::write(&garbled, "# words: X Y Z\n1 2\n").unwrap();
    assert_ne!(code(&stabgeo(&["facets", "import", garbled.to_str().unwrap()])), 0);
}

#[test]
fn facets_export_writes_all_two_qubit_facets() {
    let o = stabgeo(&["facets", "export", "--system", "2,2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 22_321);
}

#[test]
fn export_vertices_csv() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("v.csv");
    let o = stabgeo(&["export-vertices", "--system", "3,1", "--out", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = read(&f);
    assert_eq!(text.lines().count(), 13);
    assert!(text.starts_with("index,re_0,im_0,re_1,im_1,re_2,im_2"));
}

#[test]
fn bell_reports_named_values() {
    let o = stabgeo(&["bell", "--system", "2,3", "--samples", "5"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("PASS W three-body"));
    assert!(text.contains("PASS GHZ Mermin"));
}

#[test]
fn threshold_and_concentration_small_runs() {
    let o = stabgeo(&["threshold", "--system", "2,1", "--samples", "50"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = stabgeo(&["concentration", "--system", "2,2", "--samples", "20"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = stabgeo(&["entanglement", "--system", "2,2", "--generator", "walk", "--samples", "2", "--step", "0.1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("points_per_walk: 11"));
}
