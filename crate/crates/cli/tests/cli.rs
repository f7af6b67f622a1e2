use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidrep")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn braid_relation_is_equal() {
    assert_eq!(stdout(&["braid", "eq", "--n", "3", "--word", "1 2 1", "--word", "2 1 2"]), "equal\n");
    assert_eq!(stdout(&["braid", "eq", "--n", "3", "--word", "1 2", "--word", "2 1"]), "not equal\n");
    assert_eq!(stdout(&["--format", "kv", "braid", "eq", "--n", "4", "--word", "1 3", "--word", "3 1"]), "equal=true\n");
}

#[test]
fn fibonacci_hom_row() {
    let out = stdout(&["fusion", "hom", "--builtin", "fibonacci", "--i", "1", "--j", "0", "--nmax", "5"]);
    assert_eq!(out.lines().last(), Some("5 3"));
    assert_eq!(out, "1 0\n2 1\n3 1\n4 2\n5 3\n");
    let kv = stdout(&["--format", "kv", "fusion", "hom", "--builtin", "fibonacci", "--i", "tau", "--j", "0", "--nmax", "2"]);
    assert_eq!(kv, "n1=1 0\nn2=2 1\n");
}

#[test]
fn level_none_above_degree_n() {
    assert_eq!(stdout(&["spectral", "level", "--n", "16", "--m", "17", "--l", "4"]), "none\n");
    assert_eq!(stdout(&["spectral", "level", "--n", "20", "--m", "19", "--l", "4"]), "1\n");
    assert_eq!(stdout(&["spectral", "level", "--n", "6", "--m", "5", "--l", "2"]), "ambiguous 1,2\n");
}

#[test]
fn domain_errors_exit_one_with_name() {
    let out = run(&["braid", "transport", "--n", "5", "--i", "1", "--j", "2", "--k", "1", "--l", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("InvalidPair"));
    let out = run(&["rep", "build", "--family", "burau", "--n", "3", "--t", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("InvalidParameter"));
    let out = run(&["lift", "apply", "--anticommuting", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("Obstructed"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["braid", "eq", "--n", "3", "--word", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["fusion", "pf"]).status.code(), Some(2));
    assert_eq!(run(&["image", "thresholds"]).status.code(), Some(2));
}

#[test]
fn ring_file_round_trip() {
    let f = temp_file("# golden ratio ring\nrank 2\nlabels one tau\nunit 0\nN 0\n1 0\n0 1\nN 1\n0 1\n1 1\n");
    let path = f.path().to_str().unwrap();
    assert_eq!(stdout(&["fusion", "pf", "--ring", path, "--i", "tau"]), "1.618033989\n");
    assert_eq!(stdout(&["fusion", "end", "--ring", path, "--i", "1", "--nmax", "4"]).lines().last(), Some("4 13"));
    assert!(stdout(&["fusion", "bound", "--ring", path, "--i", "1", "--j", "0", "--nmax", "30"]).contains("holds"));
    let bad = temp_file("rank 2\nlabels a b\nunit 0\nN 0\n1 1\n0 1\nN 1\n0 1\n1 1\n");
    let out = run(&["fusion", "load", "--ring", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("AxiomViolation"));
}

#[test]
fn rep_spec_file() {
    let f = temp_file("family jones_tl\nn 4\nq zeta 4 1\nfactor 2,2\n");
    let path = f.path().to_str().unwrap();
    let out = stdout(&["--format", "kv", "rep", "check", "--spec", path]);
    assert_eq!(out, "relations=ok\nunitary=yes\nconstant=no\n");
    let report = stdout(&["--format", "kv", "image", "report", "--spec", path]);
    assert!(report.contains("order=96\n"));
    assert!(report.contains("series=96,24,8,2,1\n"));
    assert!(report.contains("label=solvable-nonconstant\n"));
}

#[test]
fn output_is_deterministic() {
    let args = ["image", "enum", "--family", "burau", "--n", "3", "--t", "1", "--elements"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert!(a.starts_with("order       6\n"));
    assert_eq!(a.lines().filter(|l| l.starts_with('g')).count(), 6);
}

#[test]
fn braid_constructions() {
    assert_eq!(stdout(&["braid", "swap", "--n", "4", "--a", "1"]), "1 2 3 1 2 1\n");
    assert_eq!(stdout(&["braid", "shift-check", "--n", "6", "--k", "5", "--i", "2"]), "true\n");
    assert_eq!(stdout(&["braid", "transport", "--n", "5", "--i", "2", "--j", "4", "--k", "2", "--l", "4"]), "identity\n");
    let nf = stdout(&["--format", "kv", "braid", "nf", "--n", "3", "--word", "1 2 1 1 2 1"]);
    assert!(nf.starts_with("infimum=2\ncanonical_length=0\n"));
}

#[test]
fn lift_and_spectral() {
    let rep = ["--family", "jones_tl", "--n", "5", "--q", "zeta 4 1", "--factor", "3,2"];
    let obs = stdout(&[&["lift", "obstruction"][..], &rep[..]].concat());
    assert!(obs.starts_with("obstruction +1\n"));
    let anti = stdout(&["lift", "obstruction", "--anticommuting", "6"]);
    assert!(anti.starts_with("obstruction -1\n"));
    let tr = stdout(&[&["spectral", "translation"][..], &rep[..]].concat());
    assert!(tr.ends_with("translation pass\n"));
    assert_eq!(stdout(&["spectral", "convexity", "--dims", "5 3 2 1 0 0"]), "dims        5 3 2 1 0 0\nconvex      yes\n");
    assert!(stdout(&["spectral", "convexity", "--dims", "5 4 3 1"]).ends_with("convex      no\n"));
}

#[test]
fn thresholds() {
    assert_eq!(stdout(&["image", "thresholds", "--dim", "3"]), "rootbound   14\n");
    assert_eq!(stdout(&["--format", "kv", "image", "thresholds", "--k", "2", "--h", "60"]), "sporadic=21\n");
}
