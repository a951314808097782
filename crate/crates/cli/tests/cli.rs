use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn starlike(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starlike")).args(args).current_dir(cwd).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct(dir: &Path, name: &str, args: &[&str]) {
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", name]);
    let o = starlike(&all, dir);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

fn report(dir: &Path, file: &str) -> Value {
    serde_json::from_slice(&fs::read(dir.join(file)).unwrap()).unwrap()
}

fn status_of<'a>(rep: &'a Value, check: &str) -> &'a str {
    rep["instances"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == check)
        .map(|c| c["status"].as_str().unwrap())
        .unwrap()
}

#[test]
fn construct_writes_three_files() {
    let tmp = tempfile::tempdir().unwrap();
    construct(tmp.path(), "ag", &["--kind", "affine_space", "--d", "3", "--p", "2"]);
    let dot = fs::read_to_string(tmp.path().join("ag/graph.dot")).unwrap();
    let vertices = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!((vertices, edges), (22, 56));
    let groups = report(tmp.path(), "ag/groups.json");
    assert_eq!(groups["degree"], 22);
    assert_eq!(groups["schema_version"], 1);
    assert!(tmp.path().join("ag/design.json").exists());
}

#[test]
fn affine_space_passes_every_check() {
    let tmp = tempfile::tempdir().unwrap();
    construct(tmp.path(), "ag", &["--kind", "affine_space", "--d", "3", "--p", "2"]);
    let o = starlike(&["verify", "ag", "--out", "report.json"], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let rep = report(tmp.path(), "report.json");
    assert_eq!(rep["schema_version"], 1);
    assert_eq!(rep["passed"], true);
    let checks = rep["instances"][0]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 9);
    for c in checks {
        assert_ne!(c["status"], "fail", "{c}");
    }
    assert_eq!(status_of(&rep, "r2_analysis"), "not_applicable");
    assert_eq!(rep["instances"][0]["g"]["order"], 1344);
    assert_eq!(rep["instances"][0]["g"]["agrees"], true);
}

#[test]
fn degenerate_hypotheses_fail_on_connectivity() {
    let tmp = tempfile::tempdir().unwrap();
    construct(tmp.path(), "deg", &["--kind", "degenerate", "--k", "2", "--l", "2"]);
    let o = starlike(
        &["verify", "deg", "--checks", "pairwise_transitive,theorem_main", "--out", "r.json"],
        tmp.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let rep = report(tmp.path(), "r.json");
    assert_eq!(status_of(&rep, "pairwise_transitive"), "pass");
    assert_eq!(status_of(&rep, "theorem_main"), "fail");
    let main = &rep["instances"][0]["checks"][1];
    assert_eq!(main["witness"]["hypotheses"]["connected"], false);
    assert!(stdout(&o).contains("disconnected"));
}

#[test]
fn grid_is_not_pairwise_transitive() {
    let tmp = tempfile::tempdir().unwrap();
    construct(tmp.path(), "grid", &["--kind", "grid", "--k", "3", "--l", "2"]);
    let o = starlike(&["verify", "grid", "--checks", "pairwise_transitive", "--out", "r.json"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    let rep = report(tmp.path(), "r.json");
    let check = &rep["instances"][0]["checks"][0];
    assert_eq!(check["status"], "fail");
    assert!(!check["witness"].as_array().unwrap().is_empty());
}

#[test]
fn two_starlike_instances_get_r2_analysis() {
    let tmp = tempfile::tempdir().unwrap();
    construct(tmp.path(), "c12", &["--kind", "cycle_subdivision", "--l", "3"]);
    construct(tmp.path(), "k32", &["--kind", "complete_bipartite", "--n", "3", "--m", "2"]);
    let o = starlike(&["verify", "c12", "k32", "--checks", "starlike,r2_analysis", "--out", "r.json"], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let rep = report(tmp.path(), "r.json");
    for inst in rep["instances"].as_array().unwrap() {
        assert_eq!(inst["checks"][1]["status"], "pass");
    }
    assert_eq!(rep["instances"][0]["g"]["order"], 12);
    assert_eq!(rep["instances"][1]["n"]["order"], 6);
}

#[test]
fn exit_code_agrees_with_report() {
    let tmp = tempfile::tempdir().unwrap();
    construct(tmp.path(), "sd", &["--kind", "selfdual", "--d", "3", "--p", "2"]);
    construct(tmp.path(), "grid", &["--kind", "grid", "--k", "3", "--l", "2"]);
    for (dirs, code) in [(vec!["sd"], 0), (vec!["sd", "grid"], 1)] {
        let mut args = vec!["verify", "--checks", "pairwise_transitive", "--out", "r.json"];
        args.extend(dirs);
        let o = starlike(&args, tmp.path());
        let rep = report(tmp.path(), "r.json");
        assert_eq!(o.status.code(), Some(code));
        assert_eq!(rep["passed"], code == 0);
    }
}

#[test]
fn replacing_n_changes_the_verdict() {
    let tmp = tempfile::tempdir().unwrap();
    construct(tmp.path(), "k32", &["--kind", "complete_bipartite", "--n", "3", "--m", "2"]);
    // trivial N: the quotient is the graph itself
    let o = starlike(&["verify", "k32", "--checks", "starlike", "--n-gen", "()"], tmp.path());
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let o = starlike(&["verify", "k32", "--checks", "starlike", "--n-gen", "(0 3)"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construction_input_file() {
    let tmp = tempfile::tempdir().unwrap();
    let input = r#"{"d": 3, "p": 2,
        "G0_generators": [[[1,1,0],[0,1,0],[0,0,1]], [[0,1,0],[0,0,1],[1,0,0]]],
        "M1_basis": [[1,0,0],[0,1,0]]}"#;
    fs::write(tmp.path().join("input.json"), input).unwrap();
    construct(tmp.path(), "c", &["--spec", "input.json"]);
    let o = starlike(&["verify", "c", "--checks", "theorem_main,regular_analysis"], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 5] = [
        &["verify", "missing"],
        &["construct", "--kind", "affine_space", "--d", "2", "--p", "2", "--out", "x"],
        &["construct", "--kind", "affine_space", "--d", "3", "--p", "4", "--out", "x"],
        &["construct", "--kind", "grid", "--k", "3", "--out", "x"],
        &["scan-arrays", "--k", "9..2"],
    ];
    for args in cases {
        let o = starlike(args, tmp.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    fs::write(tmp.path().join("bad.json"), "{\"kind\": \"nope\"}").unwrap();
    assert_eq!(starlike(&["construct", "--spec", "bad.json", "--out", "x"], tmp.path()).status.code(), Some(2));
}

#[test]
fn scan_arrays_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let o = starlike(&["scan-arrays", "--k", "2..8", "--l", "2..4", "--r", "3..8"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("4,2,7,diam3,")));
    assert!(text.lines().any(|l| l.starts_with("4,2,4,diam4,")));
    let o = starlike(&["scan-arrays", "--k", "4", "--l", "3", "--r", "3..30"], tmp.path());
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = starlike(&["scan-arrays", "--k", "6", "--l", "2", "--r", "11", "--format", "json"], tmp.path());
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[0]["iota"], "(11,5,6; 1,5,6)");
}

#[test]
fn export_dot_matches_construct() {
    let tmp = tempfile::tempdir().unwrap();
    construct(tmp.path(), "k32", &["--kind", "complete_bipartite", "--n", "3", "--m", "2"]);
    let o = starlike(&["export-dot", "k32"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fs::read_to_string(tmp.path().join("k32/graph.dot")).unwrap());
}
