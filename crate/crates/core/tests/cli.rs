use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn valg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_check_exits_zero_with_header() {
    let o = valg(&["check-algebroid", "--input", &fixture("heisenberg.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("max-degree: 6\nweight-cap: 3\nmargin: 2\ntrials: 100\nseed: 0\n"), "{out}");
    assert!(out.contains("== algebroid-axioms [PASS]\nsign: standard\nOK\n"), "{out}");
    assert!(out.ends_with("status: PASS\n"));
}

#[test]
fn flags_override_job_section() {
    let o = valg(&["lie-build", "--input", &fixture("heisenberg.txt"), "--max-degree", "2", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("max-degree: 2\n") && out.contains("seed: 4\n"));
    assert!(out.contains("degree\tdim\n-2\t1\n-1\t1\n0\t2\n1\t1\n2\t1\n"), "{out}");
}

#[test]
fn verdict_failure_exits_one() {
    let o = valg(&["check-algebroid", "--input", &fixture("truncated_line_br.txt")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("== algebroid-axioms [FAIL]"));
    assert!(out.contains("action-associator (1,1,0) residual [0 0 0 -4]"), "{out}");
    let o = valg(&["check-tca", "--input", &fixture("solvable2_broken.txt")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let o = valg(&["check-tca", "--input", &fixture("malformed.txt")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6:"));
    assert_eq!(valg(&["check-tca", "--input", "/nonexistent/file.txt"]).status.code(), Some(2));
    assert_eq!(valg(&["module-induce", "--input", &fixture("truncated_line.txt")]).status.code(), Some(2));
    assert_eq!(valg(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn oversized_windows_exit_three() {
    let o = valg(&["vb-dims", "--input", &fixture("heisenberg.txt"), "--max-degree", "40"]);
    assert_eq!(o.status.code(), Some(3));
    let o = valg(&["vb-dims", "--input", &fixture("heisenberg.txt"), "--weight-cap", "50"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn machine_output_is_exact_json() {
    let args = ["vb-dims", "--input", &fixture("line_algebroid.txt"), "--max-degree", "2", "--format", "machine"];
    let a = valg(&args);
    let b = valg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["command"], "vb-dims");
    assert_eq!(v["config"]["weight_cap"], 3);
    let dims = &v["sections"][1]["table"]["rows"];
    assert_eq!(dims[0][1], 2);
    assert_eq!(dims[1][1], 2);
}

#[test]
fn violations_render_as_fractions_in_json() {
    let o = valg(&["check-algebroid", "--input", &fixture("truncated_line_br.txt"), "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v["sections"][1]["violations"][0];
    assert_eq!(row["axiom"], "action-associator");
    assert_eq!(row["residual"][3], serde_json::json!({"num": "-4", "den": "1"}));
}

#[test]
fn fuzz_runs_without_input() {
    let o = valg(&["fuzz", "--trials", "5", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("input: -\n") && out.contains("valid-trials: 5\n") && out.contains("perturbations: 5\n"), "{out}");
}

#[test]
fn module_commands_report_dimensions() {
    let o = valg(&["module-radical", "--input", &fixture("sl2_zero.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("degree\tM\tJ\tL\n0\t1\t0\t1\n1\t3\t3\t0\n"), "{out}");
    let o = valg(&["classify-roundtrip", "--input", &fixture("heisenberg_plus_sl2.txt")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = valg(&["module-simple", "--input", &fixture("line_algebroid.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("top-simple: no"));
}
