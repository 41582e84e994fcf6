use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn latmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latmon")).args(args).output().expect("run latmon")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(o: &Output, key: &str) -> String {
    let text = stdout(o);
    let prefix = format!("{key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
        .to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn e8(dir: &Path) -> PathBuf {
    let p = dir.join("e8.json");
    let o = latmon(&["milnor", "5", "3", "2", "--lattice-out", s(&p), "--quiet"]);
    assert!(o.status.success());
    p
}

const U: &str = r#"{"rank": 2, "gram": [[0, 1], [1, 0]]}"#;

#[test]
fn lattice_info_on_the_hyperbolic_plane() {
    let dir = TempDir::new().unwrap();
    let o = latmon(&["lattice-info", s(&write(dir.path(), "u.json", U))]);
    assert!(o.status.success());
    assert_eq!(value(&o, "SIGNATURE"), "(1,1,0)");
    assert_eq!(value(&o, "DET"), "-1");
    assert_eq!(value(&o, "EVEN"), "true");
}

#[test]
fn lattice_info_on_e8() {
    let dir = TempDir::new().unwrap();
    let o = latmon(&["lattice-info", s(&e8(dir.path()))]);
    assert_eq!(value(&o, "RANK"), "8");
    assert_eq!(value(&o, "SIGNATURE"), "(0,8,0)");
    assert_eq!(value(&o, "DET"), "1");
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"rank": 2, "gram": [[0, 1], [2, 0]]}"#);
    let o = latmon(&["lattice-info", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("ERROR="));
    let o = latmon(&["lattice-info", s(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spinor_norms() {
    let dir = TempDir::new().unwrap();
    let u = write(dir.path(), "u.json", U);
    let id = write(dir.path(), "id.json", r#"{"matrix": [[1, 0], [0, 1]]}"#);
    let swap = write(dir.path(), "swap.json", r#"{"matrix": [[0, 1], [1, 0]]}"#);
    let neg_swap = write(dir.path(), "neg_swap.json", r#"{"matrix": [[0, -1], [-1, 0]]}"#);
    let neg = write(dir.path(), "neg.json", r#"{"matrix": [[-1, 0], [0, -1]]}"#);
    let not_iso = write(dir.path(), "bad.json", r#"{"matrix": [[2, 0], [0, 1]]}"#);
    assert_eq!(value(&latmon(&["spinor", s(&u), s(&id)]), "SPINOR"), "+1");
    // reflection in e - f, a (-2)-vector
    assert_eq!(value(&latmon(&["spinor", s(&u), s(&swap)]), "SPINOR"), "+1");
    // reflection in e + f, a (+2)-vector
    assert_eq!(value(&latmon(&["spinor", s(&u), s(&neg_swap)]), "SPINOR"), "-1");
    assert_eq!(value(&latmon(&["spinor", s(&u), s(&neg)]), "SPINOR"), "-1");
    let o = latmon(&["spinor", s(&u), s(&not_iso)]);
    assert!(o.status.success());
    assert_eq!(value(&o, "ISOMETRY"), "false");
}

#[test]
fn cvl_check_on_all_roots_of_e8() {
    let dir = TempDir::new().unwrap();
    let o = latmon(&["cvl-check", s(&e8(dir.path()))]);
    assert!(o.status.success());
    assert_eq!(value(&o, "ROOTS"), "240");
    assert_eq!(value(&o, "GENERATES"), "true");
    assert_eq!(value(&o, "ORBIT"), "certified");
    assert_eq!(value(&o, "DIAGRAM"), "false");
    assert_eq!(value(&o, "COMPLETE"), "false");
    assert!(value(&o, "PATTERN").contains("default"));
}

#[test]
fn cvl_check_on_a_single_root() {
    let dir = TempDir::new().unwrap();
    let l = e8(dir.path());
    let roots = write(dir.path(), "r.json", &format!(r#"{{"lattice": "{}", "roots": [[1,0,0,0,0,0,0,0]]}}"#, s(&l)));
    let o = latmon(&["cvl-check", s(&l), s(&roots), "--pattern", s(&dir.path().join("none.json"))]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(value(&o, "GENERATES"), "false");
    assert_eq!(value(&o, "COMPLETE"), "false");
    assert!(value(&o, "PATTERN").contains("default"));
}

#[test]
fn surface_k3() {
    let o = latmon(&["surface", "1"]);
    assert!(o.status.success());
    assert_eq!(value(&o, "K_SCALAR"), "0");
    assert_eq!(value(&o, "LPRIME_RANK"), "20");
    assert_eq!(value(&o, "LPRIME_SIGNATURE"), "(2,18,0)");
    assert_eq!(value(&o, "MILNOR_MATCH"), "true");
    assert_eq!(value(&o, "SPLITTING_VERIFIED"), "true");
    assert_eq!(value(&o, "K3_VERIFIED"), "true");
}

#[test]
fn surface_with_multiple_fibres() {
    let dir = TempDir::new().unwrap();
    let model = dir.path().join("model.json");
    let o = latmon(&["surface", "1", "2", "3", "--model-out", s(&model)]);
    assert!(o.status.success());
    assert_eq!(value(&o, "K_CLASS"), "7e");
    assert_eq!(value(&o, "FIBRE_SPAN_2_VERIFIED"), "true");
    assert_eq!(value(&o, "FIBRE_SPAN_3_VERIFIED"), "true");
    let text = std::fs::read_to_string(&model).unwrap();
    assert!(text.contains("\"multiplicities\""));
}

#[test]
fn surface_rejects_zero_genus() {
    let o = latmon(&["surface", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("positive geometric genus"));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let strip = |o: Output| stdout(&o).lines().filter(|l| !l.starts_with("TIME_MS=")).collect::<Vec<_>>().join("\n");
    let a = strip(latmon(&["surface", "2", "2"]));
    let b = strip(latmon(&["surface", "2", "2"]));
    assert_eq!(a, b);
    let c = strip(latmon(&["surface", "2", "2", "--seed", "1"]));
    assert_ne!(a.lines().nth(1), c.lines().nth(1), "seed enters the input digest");
}

#[test]
fn milnor_matches_the_fibre_complement() {
    let o = latmon(&["milnor", "11", "3", "2"]);
    assert_eq!(value(&o, "MU"), "20");
    assert_eq!(value(&o, "MATCH"), "true");
    let o = latmon(&["milnor", "17", "3", "2"]);
    assert_eq!(value(&o, "COMPARE_PG"), "2");
    assert_eq!(value(&o, "MATCH"), "true");
}

#[test]
fn orbit_of_a_root_in_e8() {
    let dir = TempDir::new().unwrap();
    let l = e8(dir.path());
    let simple: Vec<String> = (0..8).map(|i| format!("[{}]", (0..8).map(|j| if i == j { "1" } else { "0" }).collect::<Vec<_>>().join(","))).collect();
    let roots = write(dir.path(), "r.json", &format!(r#"{{"roots": [{}]}}"#, simple.join(",")));
    let out = dir.path().join("orbit.json");
    let o = latmon(&["orbit", s(&l), s(&roots), "--roots-out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(value(&o, "ORBIT_SIZE"), "240");
    assert_eq!(value(&o, "REPLAY_OK"), "true");
    assert!(out.exists());
}

#[test]
fn output_file_and_quiet() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.txt");
    let o = latmon(&["milnor", "5", "3", "2", "--quiet", "--output", s(&report)]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&report).unwrap().contains("DET=1"));
}
