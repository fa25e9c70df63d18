use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use algcat::io::parse_algebra;

fn algcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes_follow_status() {
    assert_eq!(code(&algcat(&["classify", "builtin:zmod_ring:2"])), 0);
    assert_eq!(code(&algcat(&["check", "protomodular", "builtin:boolean_semiring"])), 1);
    assert_eq!(code(&algcat(&["check", "unital", "builtin:subtraction_X", "--mode", "bounded"])), 1);
    assert_eq!(code(&algcat(&["check", "maltsev", "builtin:subtraction_3"])), 2);
    let probe = algcat(&["probe-coproduct", "builtin:idempotent_monoid_2", "--element", "a", "--length", "8"]);
    assert_eq!(code(&probe), 2);
    assert!(stdout(&probe).starts_with("absent at bound 8"));
}

#[test]
fn input_errors_exit_3() {
    let o = algcat(&["classify", "--bogus", "builtin:trivial_monoid"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(code(&algcat(&["classify", "/nonexistent.alg"])), 3);
    assert_eq!(code(&algcat(&["check", "frobenius", "builtin:trivial_monoid"])), 3);
    assert_eq!(code(&algcat(&["probe-coproduct", "builtin:trivial_monoid", "--element", "e", "--length", "2"])), 3);
    assert_eq!(code(&algcat(&[])), 3);
}

#[test]
fn machine_format_has_one_line_per_property() {
    let o = algcat(&[
        "classify",
        "builtin:cyclic_group:3",
        "builtin:idempotent_monoid_2",
        "builtin:bicyclic",
        "--format",
        "machine",
    ]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 15);
    let m2: Vec<Vec<&str>> = out
        .lines()
        .filter(|l| l.starts_with("M2\t"))
        .map(|l| l.split('\t').collect())
        .collect();
    assert_eq!(m2[0], ["M2", "unital", "holds", "exact-theorem", "-"]);
    assert_eq!(m2[3][2], "fails");
    assert_ne!(m2[3][4], "-");
}

#[test]
fn files_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("c2.alg");
    fs::write(&good, "kind: monoid\nname: C2\nelements: e g\nunit: e\ntable mul:\ne g\ng e\n").unwrap();
    let bad = dir.path().join("bad.alg");
    fs::write(&bad, "kind: monoid\nname: Bad\nelements: e g\nunit: g\ntable mul:\ne g\ng e\n").unwrap();
    let ragged = dir.path().join("ragged.alg");
    fs::write(&ragged, "kind: monoid\nelements: e g\nunit: e\ntable mul:\ne g\ng\n").unwrap();
    let p = |x: &Path| x.to_str().unwrap().to_string();

    let o = algcat(&["validate", &p(&good)]);
    assert_eq!(code(&o), 0);
    let o = algcat(&["validate", &p(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("axiom"));
    let o = algcat(&["validate", &p(&ragged)]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));

    let o = algcat(&["homs", &p(&good), "builtin:cyclic_group:4", "--count"]);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn pullback_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.map");
    fs::write(&f, "e -> e\ng -> g\n").unwrap();
    let g = dir.path().join("g.map");
    fs::write(&g, "e -> e\ng -> e\ng^2 -> e\n").unwrap();
    let (fs_, gs) = (f.to_str().unwrap(), g.to_str().unwrap());
    let o = algcat(&[
        "pullback",
        "--f",
        fs_,
        "--g",
        gs,
        "builtin:cyclic_group:2",
        "builtin:cyclic_group:3",
        "builtin:cyclic_group:2",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let pb = parse_algebra(&stdout(&o), true).unwrap();
    // only (e, *) survives
    assert_eq!(pb.size(), 3);
}

#[test]
fn relations_on_groups_commute() {
    let o = algcat(&["relations", "builtin:cyclic_group:3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("all pairs commute"));
    assert!(out.lines().filter(|l| l.starts_with('R')).all(|l| l.contains("transitive=true")));
}
