use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_condcolor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const C5: &str = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";

#[test]
fn solve_writes_a_witness_that_verifies() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.col", K4);
    let w = dir.path().join("k4.json");
    let out = run(&[
        "solve",
        "--graph",
        s(&g),
        "-k",
        "4",
        "-r",
        "3",
        "--witness",
        s(&w),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = run(&["verify", "--graph", s(&g), "--witness", s(&w)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("valid (4,3)-coloring"));
}

#[test]
fn solve_reports_uncolorable_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.col", K4);
    let out = run(&["solve", "--graph", s(&g), "-k", "3", "-r", "1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("no"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.col", "p edge 3 1\ne 1 9\n");
    assert_eq!(
        code(&run(&["solve", "--graph", s(&g), "-k", "3", "-r", "1"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "solve",
            "--graph",
            "/nonexistent.col",
            "-k",
            "3",
            "-r",
            "1"
        ])),
        2
    );
    assert_eq!(code(&run(&["solve"])), 2);
}

#[test]
fn verify_rejects_a_tampered_witness() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.col", C5);
    let w = dir.path().join("c5.json");
    assert_eq!(
        code(&run(&[
            "chi",
            "--graph",
            s(&g),
            "-r",
            "2",
            "--witness",
            s(&w)
        ])),
        0
    );
    let text = fs::read_to_string(&w).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    value["colors"]["1"] = value["colors"]["0"].clone();
    fs::write(&w, value.to_string()).unwrap();
    let out = run(&["verify", "--graph", s(&g), "--witness", s(&w)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("invalid"));
}

#[test]
fn chi_prints_known_values() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (C5, "2", "5"),
        ("p edge 2 1\ne 1 2\n", "7", "2"),
        (
            "p edge 6 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n",
            "2",
            "3",
        ),
        (K4, "3", "4"),
    ];
    for (i, (graph, r, want)) in cases.into_iter().enumerate() {
        let g = write(&dir, &format!("g{i}.col"), graph);
        let out = run(&["chi", "--graph", s(&g), "-r", r]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out).trim(), want, "case {i}");
    }
}

#[test]
fn encode_emits_dimacs_cnf() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.col", C5);
    let out = run(&["encode", "--graph", s(&g), "-k", "3", "-r", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l.starts_with("p cnf ")));
}

#[test]
fn reduce_kcol_writes_a_bundle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k1.col", "p edge 1 0\n");
    let prefix = dir.path().join("out");
    let out = run(&[
        "reduce",
        "kcol",
        "--graph",
        s(&g),
        "-k",
        "3",
        "-r",
        "2",
        "--out",
        s(&prefix),
    ]);
    assert_eq!(code(&out), 0);
    let col = fs::read_to_string(dir.path().join("out.col")).unwrap();
    assert!(col.starts_with("p edge 3 3"));
    let layout: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out.layout.json")).unwrap())
            .unwrap();
    assert_eq!(layout.as_object().unwrap().len(), 3);
    assert!(dir.path().join("out.provenance.json").exists());
}

#[test]
fn reduce_sat3_reports_path_lengths() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "one.cnf", "p cnf 3 1\n1 2 3 0\n");
    let prefix = dir.path().join("sat");
    let layout = dir.path().join("roles.json");
    let out = run(&[
        "reduce",
        "sat3",
        "--cnf",
        s(&f),
        "--out",
        s(&prefix),
        "--layout",
        s(&layout),
    ]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("a_path=17 b_path=1"),
        "{}",
        stdout(&out)
    );
    assert!(layout.exists());
    assert!(!dir.path().join("sat.layout.json").exists());
}

#[test]
fn reduce_planar_writes_output_cycle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c3.col", "p edge 3 3\ne 1 2\ne 2 3\ne 3 1\n");
    let h = write(&dir, "c3.ham", "h 1 2 3\n");
    let prefix = dir.path().join("planar");
    let out = run(&[
        "reduce",
        "planar",
        "--graph",
        s(&g),
        "--witness",
        s(&h),
        "--out",
        s(&prefix),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("vertices=15 edges=24"));
    let ham = fs::read_to_string(dir.path().join("planar.ham")).unwrap();
    assert_eq!(ham.split_whitespace().count(), 16);
}

#[test]
fn reduce_ham_rejects_a_bad_cycle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p4.col", "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    let h = write(&dir, "p4.ham", "h 1 2 3 4\n");
    let prefix = dir.path().join("ham");
    let out = run(&[
        "reduce",
        "ham",
        "--graph",
        s(&g),
        "--witness",
        s(&h),
        "--out",
        s(&prefix),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn gadget_synth_and_verify() {
    let dir = TempDir::new().unwrap();
    let fixture = dir.path().join("gadget.json");
    assert_eq!(code(&run(&["gadget", "synth", "--out", s(&fixture)])), 0);
    let out = run(&["gadget", "verify", "--fixture", s(&fixture), "--jobs", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("certified"));
    assert_eq!(code(&run(&["gadget", "verify"])), 0);
}

#[test]
fn gadget_verify_fails_on_corrupted_fixture() {
    let dir = TempDir::new().unwrap();
    let fixture = dir.path().join("gadget.json");
    assert_eq!(code(&run(&["gadget", "synth", "--out", s(&fixture)])), 0);
    let mut value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&fixture).unwrap()).unwrap();
    let edges = value["edges"].as_array_mut().unwrap();
    edges.remove(0);
    fs::write(&fixture, value.to_string()).unwrap();
    let out = run(&["gadget", "verify", "--fixture", s(&fixture)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("certification failed"));
}

#[test]
fn roundtrip_agrees_on_sat_and_unsat() {
    let dir = TempDir::new().unwrap();
    let sat = write(&dir, "sat.cnf", "p cnf 3 1\n1 2 3 0\n");
    let out = run(&["roundtrip", "--cnf", s(&sat)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("agree: yes"));

    let mut unsat = String::from("p cnf 3 8\n");
    for bits in 0..8 {
        for i in 0..3 {
            let v = i + 1;
            unsat.push_str(&format!("{} ", if bits >> i & 1 == 1 { -v } else { v }));
        }
        unsat.push_str("0\n");
    }
    let unsat = write(&dir, "unsat.cnf", &unsat);
    let out = run(&["roundtrip", "--cnf", s(&unsat)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("agree: no"));
}

#[test]
fn roundtrip_refuses_formulas_over_the_oracle_bound() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "wide.cnf", "p cnf 25 1\n1 2 25 0\n");
    assert_eq!(code(&run(&["roundtrip", "--cnf", s(&f)])), 2);
    assert_eq!(
        code(&run(&["roundtrip", "--cnf", s(&f), "--oracle-bound", "30"])),
        0
    );
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.cnf", "p cnf 4 3\n1 2 3 0\n-1 2 4 0\n1 -3 -4 0\n");
    let mut bundles = Vec::new();
    for run_id in 0..2 {
        let prefix = dir.path().join(format!("run{run_id}"));
        assert_eq!(
            code(&run(&[
                "reduce",
                "sat3",
                "--cnf",
                s(&f),
                "--out",
                s(&prefix)
            ])),
            0
        );
        let files: Vec<String> = [".col", ".layout.json", ".provenance.json"]
            .iter()
            .map(|suffix| {
                fs::read_to_string(dir.path().join(format!("run{run_id}{suffix}"))).unwrap()
            })
            .collect();
        bundles.push(files);
    }
    assert_eq!(bundles[0], bundles[1]);

    let g = write(&dir, "c5.col", C5);
    let a = stdout(&run(&["encode", "--graph", s(&g), "-k", "3", "-r", "2"]));
    let b = stdout(&run(&["encode", "--graph", s(&g), "-k", "3", "-r", "2"]));
    assert_eq!(a, b);
}
