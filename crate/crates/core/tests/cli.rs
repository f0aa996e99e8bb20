use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use tropical_approx::cli::run;

const CHAIN_A: &str = "5 6
-inf -inf -inf -inf -inf -1
-1 -inf -inf -inf -inf -inf
-inf -1 -inf -inf -inf -inf
-inf -inf -1 -inf -inf -inf
-inf -inf -inf -1 -inf -inf
";

const CHAIN_B: &str = "5 6
0 -inf -inf -inf -inf -inf
-inf 0 -inf -inf -inf -inf
-inf -inf 0 -inf -inf -inf
-inf -inf -inf 0 -inf -inf
-inf -inf -inf -inf 0 -inf
";

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn add(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn chain(&self) -> [PathBuf; 3] {
        [
            self.add("A.txt", CHAIN_A),
            self.add("B.txt", CHAIN_B),
            self.add("u.txt", "6\n0 0 0 0 0 0\n"),
        ]
    }
}

fn bin(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tropical-approx"));
    cmd.args(args).env_remove("MPS_MAX_ITERS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn chain_example_with_both_methods_as_json() {
    let f = Files::new();
    let [a, b, u] = f.chain();
    let out = bin(
        &["solve", "--a", s(&a), "--b", s(&b), "--init", s(&u), "--method", "both", "--trace", "--output", "json"],
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let limit = serde_json::json!(["-1", "-2", "-3", "-4", "-5", "0"]);
    assert_eq!(json["cyclic"]["solution"], limit);
    assert_eq!(json["power"]["solution"], limit);
    assert_eq!(json["power"]["iterations"], 5);
    assert_eq!(json["power"]["trace"][1], serde_json::json!(["-1", "-1", "-1", "-1", "-1", "0"]));
    assert_eq!(json["cyclic"]["trace"][1], serde_json::json!(["-1", "0", "0", "0", "0", "0"]));
    assert!(stderr(&out).contains("column 5"), "missing admissibility warning");
}

#[test]
fn json_output_is_deterministic() {
    let f = Files::new();
    let [a, b, u] = f.chain();
    let args = ["compare", "--a", s(&a), "--b", s(&b), "--init", s(&u), "--output", "json"];
    let first = bin(&args, &[]);
    let second = bin(&args, &[]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let json: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(json["sandwich"], true);
    assert_eq!(json["same_limit"], true);
}

#[test]
fn iteration_cap_from_environment_and_flag() {
    let f = Files::new();
    let [a, b, u] = f.chain();
    let args = ["solve", "--a", s(&a), "--b", s(&b), "--init", s(&u), "--method", "power"];
    let capped = bin(&args, &[("MPS_MAX_ITERS", "2")]);
    assert_eq!(capped.status.code(), Some(1));
    assert!(stdout(&capped).contains("IterationCapHit"));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--max-iters", "10"]);
    let ok = bin(&with_flag, &[("MPS_MAX_ITERS", "2")]);
    assert_eq!(ok.status.code(), Some(0), "--max-iters must take precedence");
}

#[test]
fn distance_to_half_space_and_generators() {
    let f = Files::new();
    let h = f.add("h.txt", "3\n0 -inf 0\n-inf 0 -inf\n");
    let x = f.add("x.txt", "3\n0 1 0\n");
    let g = f.add("g.txt", "3 3\n0 0 -inf\n-inf 0 -inf\n-inf -inf 0\n");
    let y = f.add("y.txt", "3\n2 1 0\n");
    let out = bin(&["distance", "--halfspace", s(&h), "--point", s(&x)], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");
    let out = bin(&["distance", "--generators", s(&g), "--point", s(&y)], &[]);
    assert_eq!(stdout(&out).trim(), "1");
    let out = bin(&["project-semimodule", "--generators", s(&g), "--point", s(&y)], &[]);
    assert!(stdout(&out).contains("projection: 1 1 0"));
    let out = bin(&["distance", "--point", s(&y)], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn canonicalize_and_best_approx() {
    let f = Files::new();
    let h = f.add("h.txt", "3\n-inf 0 -inf\n0 -inf -inf\n");
    let x = f.add("x.txt", "3\n2 1 0\n");
    let out = bin(&["canonicalize", "--halfspace", s(&h), "--output", "json"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["I"], serde_json::json!([1]));
    assert_eq!(json["J"], serde_json::json!([0]));
    assert_eq!(json["finite_apex"], false);

    let out = bin(&["best-approx", "--halfspace", s(&h), "--point", s(&x), "--output", "json"], &[]);
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["kind"], "faces");
    assert_eq!(json["distance"], "1");
    assert_eq!(json["faces"].as_array().unwrap().len(), 1);

    let degenerate = f.add("d.txt", "2\n0 0\n-inf -inf\n");
    let out = bin(&["canonicalize", "--halfspace", s(&degenerate)], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("degenerate"));
}

#[test]
fn separate_reports_no_separation_for_members() {
    let f = Files::new();
    let g = f.add("g.txt", "3 3\n0 0 -inf\n-inf 0 -inf\n-inf -inf 0\n");
    let inside = f.add("in.txt", "3\n1 1 0\n");
    let outside = f.add("out.txt", "3\n2 1 0\n");
    let out = bin(&["separate", "--generators", s(&g), "--point", s(&inside)], &[]);
    assert_eq!(out.status.code(), Some(1));
    let out = bin(&["separate", "--generators", s(&g), "--point", s(&outside), "--output", "json"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn input_errors_exit_with_two() {
    let f = Files::new();
    let h = f.add("h.txt", "3\n-inf 0 -inf\n0 -inf -inf\n");
    let frac = f.add("frac.txt", "3\n2.5 1 0\n");
    let short = f.add("short.txt", "2\n1 0\n");
    let garbage = f.add("bad.txt", "3\n1 x 0\n");

    let out = bin(&["--mode", "int", "distance", "--halfspace", s(&h), "--point", s(&frac)], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("integer tokens only"));
    let out = bin(&["distance", "--halfspace", s(&h), "--point", s(&frac)], &[]);
    assert_eq!(out.status.code(), Some(0), "float mode is inferred");
    assert_eq!(stdout(&out).trim(), "1.5");

    let out = bin(&["distance", "--halfspace", s(&h), "--point", s(&short)], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("short.txt"));

    let out = bin(&["distance", "--halfspace", s(&h), "--point", s(&garbage)], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.txt:2:3"));

    let out = bin(&["distance", "--halfspace", "/nonexistent", "--point", s(&h)], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn in_process_runner_matches_binary() {
    let f = Files::new();
    let h = f.add("h.txt", "3\n-inf 0 -inf\n0 -inf -inf\n");
    let x = f.add("x.txt", "3\n2 1 0\n");
    let args = ["tropical-approx", "project-halfspace", "--halfspace", s(&h), "--point", s(&x)];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(args, &mut out, &mut err), 0);
    assert_eq!(String::from_utf8(out.clone()).unwrap(), "1 1 0\n");
    assert_eq!(bin(&args[1..], &[]).stdout, out);

    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["tropical-approx", "--help"], &mut out, &mut err), 0);
    assert!(String::from_utf8(out).unwrap().contains("solve"));
}
