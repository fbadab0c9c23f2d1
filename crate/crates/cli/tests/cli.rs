use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn flowcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowcat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn triangle(cmd: &str) -> Vec<String> {
    vec![cmd.into(), "--input".into(), fixture("triangle.txt"), "--morse".into(), fixture("triangle.morse")]
}

fn run(args: Vec<String>) -> Output {
    flowcat(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn check_reports_critical_cells() {
    let o = run(triangle("check"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("acyclic: true; critical: [v0], [v1 v2]"), "{}", stdout(&o));
}

#[test]
fn cyclic_matching_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("cycle.matching");
    fs::write(&m, "v0 v0,v1\nv1 v1,v2\nv2 v0,v2\n").unwrap();
    let o = flowcat(&["check", "--input", &fixture("triangle.txt"), "--matching", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("acyclic: false; cycle:"));
}

#[test]
fn malformed_input_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.txt");
    fs::write(&p, "a b\nc c\n").unwrap();
    let o = flowcat(&["check", "--input", p.to_str().unwrap(), "--greedy-seed", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn matching_sources_are_exclusive() {
    let mut args = triangle("check");
    args.extend(["--greedy-seed".into(), "1".into()]);
    assert_eq!(run(args).status.code(), Some(2));
}

#[test]
fn capacity_exits_3() {
    let o = flowcat(&[
        "flowpaths",
        "--input",
        &fixture("torus.json"),
        "--matching",
        &fixture("torus.matching"),
        "--cap-paths",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn flowpaths_json_counts() {
    let mut args = triangle("flowpaths");
    args.push("--json".into());
    let o = run(args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["paths"], 6);
    assert_eq!(v["reduced"], 6);
}

#[test]
fn verify_torus_passes() {
    let o = flowcat(&["verify", "--input", &fixture("torus.json"), "--matching", &fixture("torus.matching"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn export_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let mut args = triangle("export");
        args.extend(["--out".into(), dir.path().to_string_lossy().into_owned()]);
        assert_eq!(run(args).status.code(), Some(0));
    }
    let hasse = fs::read_to_string(a.path().join("fp.dot")).unwrap();
    assert_eq!(hasse.matches(" -> ").count(), 6);
    assert_eq!(hasse.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count(), 6);
    let fiber = fs::read_to_string(a.path().join("fiber_v0.dot")).unwrap();
    assert_eq!(fiber.matches(" -> ").count(), 6);
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    for name in names {
        assert_eq!(fs::read(a.path().join(&name)).unwrap(), fs::read(b.path().join(&name)).unwrap(), "{name:?}");
    }
}

#[test]
fn unwritable_out_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    fs::write(&file, "").unwrap();
    let mut args = triangle("export");
    args.extend(["--out".into(), file.join("sub").to_string_lossy().into_owned()]);
    assert_eq!(run(args).status.code(), Some(2));
}
