use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

static COUNTER: AtomicUsize = AtomicUsize::new(0);

struct Scratch(PathBuf);

impl Scratch {
    fn new() -> Self {
        let id = COUNTER.fetch_add(1, Ordering::SeqCst);
        let dir = std::env::temp_dir().join(format!("reorient-cli-{}-{id}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reorient")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json", "--no-timing"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Runs `check` with the report's replay arguments and witness.
fn replay(file: &Path, report: &Value) -> i32 {
    let mut args = vec!["check".to_string(), p(file).to_string()];
    for a in report["replay"].as_array().expect("replay present") {
        args.push(a.as_str().unwrap().to_string());
    }
    let w: Vec<&str> = report["witness"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    args.push("--witness".into());
    args.push(w.join(","));
    let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
    run(&refs).status.code().unwrap()
}

const K3_BIDIRECTED: &str = "a 0 1\na 1 0\na 1 2\na 2 1\na 0 2\na 2 0\n";
const C5: &str = "e 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n";

#[test]
fn bidirected_triangle_is_two_arc_strong() {
    let s = Scratch::new();
    let f = s.file("k3.txt", K3_BIDIRECTED);
    let (code, r) = json(&["check", p(&f), "--k", "2", "--mode", "arc-strong"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "feasible");
    let (code, _) = json(&["check", p(&f), "--k", "3", "--mode", "arc-strong"]);
    assert_eq!(code, 1);
}

#[test]
fn cycle_of_five_needs_four_doublings() {
    let s = Scratch::new();
    let f = s.file("c5.txt", C5);
    let (code, r) = json(&["poly", "w23eda", p(&f)]);
    assert_eq!(code, 0);
    assert_eq!(r["optimum"], "4");
    assert_eq!(replay(&f, &r), 0);
}

#[test]
fn weights_file_changes_the_choice() {
    let s = Scratch::new();
    let f = s.file("c5.txt", C5);
    let w = s.file("w.txt", "# heavy edge\nw e 2 7/2\n");
    let (code, r) = json(&["poly", "w23eda", p(&f), "--weights", p(&w)]);
    assert_eq!(code, 0);
    assert_eq!(r["optimum"], "4");
    assert!(!r["witness"].as_array().unwrap().iter().any(|x| x == "e2"));
    let bad = s.file("bad.txt", "w e 0 -1\n");
    assert_eq!(json(&["poly", "w23eda", p(&f), "--weights", p(&bad)]).0, 2);
}

#[test]
fn three_sdo_gadget_is_feasible_at_twelve() {
    let s = Scratch::new();
    let src = s.file("sat.txt", "x 2\nc 1 2\nc 1 -2\nc -1 2\n");
    let out = s.0.join("gadget.txt");
    let (code, r) = json(&["reduce", "3sdo", p(&src), "--ell", "3", "--out", p(&out)]);
    assert_eq!(code, 0, "{r}");
    let prov = std::fs::read_to_string(s.0.join("gadget.txt.prov")).unwrap();
    assert!(prov.lines().any(|l| l.starts_with("label v ")));
    let (code, r) = json(&["solve", "3sdo", p(&out), "--budget", "12"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["optimum"], "12");
    assert_eq!(replay(&out, &r), 0);
}

#[test]
fn rocket_of_size_two_has_eleven_vertices() {
    let out = run(&["gen", "rocket", "2", "out"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("v 11"));
}

#[test]
fn generated_sat_has_balanced_shape() {
    let s = Scratch::new();
    let f = s.0.join("s.txt");
    assert_eq!(json(&["gen", "s3b-sat", "2", "seed=1", "--out", p(&f)]).0, 0);
    assert_eq!(json(&["check", p(&f), "--mode", "s3b-shape"]).0, 0);
}

#[test]
fn generated_cactus_is_two_but_not_three_edge_connected() {
    let s = Scratch::new();
    let f = s.0.join("c.txt");
    assert_eq!(json(&["gen", "cactus", "6", "seed=7", "--out", p(&f)]).0, 0);
    assert_eq!(json(&["check", p(&f), "--mode", "cactus"]).0, 0);
    assert_eq!(json(&["check", p(&f), "--mode", "edge-connected", "--k", "2"]).0, 0);
    assert_eq!(json(&["check", p(&f), "--mode", "edge-connected", "--k", "3"]).0, 1);
}

#[test]
fn generation_is_deterministic() {
    let a = run(&["gen", "random-digraph", "6", "12", "42"]).stdout;
    let b = run(&["gen", "random-digraph", "6", "12", "seed=42"]).stdout;
    assert_eq!(a, b);
    assert_ne!(a, run(&["gen", "random-digraph", "6", "12", "43"]).stdout);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let s = Scratch::new();
    let f = s.file("loop.txt", "e 0 1\ne 0 0\n");
    let (code, r) = json(&["check", p(&f), "--mode", "strong"]);
    assert_eq!(code, 2);
    assert!(r["message"].as_str().unwrap().contains("line 2"), "{r}");
    let f = s.file("digon.txt", "a 0 1\na 1 0\n");
    assert_eq!(json(&["check", p(&f), "--mode", "strong"]).0, 0);
}

#[test]
fn unknown_verb_prints_usage() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let s = Scratch::new();
    let g = run(&["gen", "random-digraph", "6", "14", "5"]).stdout;
    let f = s.file("d.txt", std::str::from_utf8(&g).unwrap());
    let args = ["--format", "json", "--no-timing", "solve", "reversal", p(&f), "--target", "arc-strong", "--k", "1"];
    let a = run(&args).stdout;
    assert_eq!(a, run(&args).stdout);
    let timed = run(&["--format", "json", "solve", "reversal", p(&f), "--target", "arc-strong", "--k", "1"]).stdout;
    let mut v: Value = serde_json::from_slice(&timed).unwrap();
    assert!(v.as_object_mut().unwrap().remove("elapsed_ms").is_some());
    assert_eq!(v, serde_json::from_slice::<Value>(&a).unwrap());
}

#[test]
fn witnesses_replay_through_check() {
    let s = Scratch::new();
    let mut checked = 0;
    for seed in 0..6u64 {
        let d = run(&["gen", "random-digraph", "5", "11", &seed.to_string()]).stdout;
        let df = s.file(&format!("d{seed}.txt"), std::str::from_utf8(&d).unwrap());
        let g = run(&["gen", "random-multigraph", "5", "9", &seed.to_string()]).stdout;
        let gf = s.file(&format!("g{seed}.txt"), std::str::from_utf8(&g).unwrap());
        let runs: Vec<(Vec<&str>, &Path)> = vec![
            (vec!["solve", "reversal", p(&df), "--target", "arc-strong", "--k", "1"], &df),
            (vec!["solve", "deorientation", p(&df), "--k", "2"], &df),
            (vec!["solve", "deorientation", p(&df), "--target", "strong", "--k", "2"], &df),
            (vec!["poly", "degrees", p(&df), "--k", "2"], &df),
            (vec!["approx", "deor", p(&df), "--k", "2"], &df),
            (vec!["solve", "doubling", p(&gf), "--k", "3"], &gf),
            (vec!["solve", "doubling", p(&gf), "--target", "thomassen"], &gf),
            (vec!["solve", "partial-orientation", p(&gf), "--k", "1"], &gf),
            (vec!["solve", "orientation", p(&gf), "--target", "arc-strong", "--k", "2"], &gf),
            (vec!["solve", "vc", p(&gf)], &gf),
            (vec!["poly", "robbins", p(&gf)], &gf),
            (vec!["approx", "m4eda", p(&gf)], &gf),
        ];
        for (args, file) in runs {
            let (code, r) = json(&args);
            assert!(code <= 2, "{args:?}");
            if code == 0 {
                assert_eq!(replay(file, &r), 0, "{args:?} -> {r}");
                checked += 1;
            } else {
                assert!(r.get("witness").is_none() || r["status"] == "infeasible", "{args:?} -> {r}");
            }
        }
    }
    assert!(checked > 30, "only {checked} feasible runs");
}

#[test]
fn max2sat_and_budgets() {
    let s = Scratch::new();
    let f = s.file("sat.txt", "x 2\nc 1 2\nc 1 -2\nc -1 2\n");
    let (code, r) = json(&["solve", "max2sat", p(&f), "--budget", "3"]);
    assert_eq!(code, 0);
    assert_eq!(replay(&f, &r), 0);
    let f = s.file("c5.txt", C5);
    assert_eq!(json(&["solve", "vc", p(&f), "--budget", "3"]).0, 0);
    let (code, r) = json(&["solve", "vc", p(&f), "--budget", "2"]);
    assert_eq!(code, 1);
    assert_eq!(r["optimum"], "3");
}

#[test]
fn reductions_verify() {
    let s = Scratch::new();
    let sat = s.file("sat.txt", "x 2\nc 1 2\nc 1 -2\nc -1 2\n");
    for ell in ["3", "4"] {
        let (code, r) = json(&["--threads", "2", "verify-reduction", "3sdo", p(&sat), "--ell", ell]);
        assert_eq!(code, 0, "{r}");
    }
    let m = s.file("m.txt", "e 0 1\ne 1 2\ne 2 3\ne 3 0\ne 0 2\na 1 3\nt 1\n");
    assert_eq!(json(&["verify-reduction", "m2sar", p(&m)]).0, 0);
    let r = s.file("r.txt", "e 0 1\ne 1 2\ne 2 0\nr 0 1 1\nr 1 0 1\nr 0 2 1\nr 2 0 1\nr 1 2 1\nr 2 1 1\n");
    assert_eq!(json(&["verify-reduction", "lcdo", p(&r)]).0, 0);
    assert_eq!(json(&["verify-reduction", "lco-harden", p(&r)]).0, 0);
    let d = s.file("d.txt", "a 0 1\na 1 2\na 2 0\na 0 2\na 2 1\na 1 0\nbudget 0\n");
    assert_eq!(json(&["verify-reduction", "lstrong", p(&d), "--ell", "4"]).0, 0);
}

#[test]
fn reduce_without_out_prints_a_parseable_instance() {
    let s = Scratch::new();
    let k4 = s.file("k4.txt", "e 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n");
    let g = s.0.join("g.txt");
    assert_eq!(json(&["gen", "class-g-from", p(&k4), "--out", p(&g)]).0, 0);
    assert_eq!(json(&["check", p(&g), "--mode", "class-g"]).0, 0);
    let out = run(&["reduce", "vc4eda", p(&g), "--k", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let h = s.file("h.txt", std::str::from_utf8(&out.stdout).unwrap());
    let (code, r) = json(&["check", p(&h), "--mode", "edge-connected", "--k", "3"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(json(&["check", p(&h), "--mode", "edge-connected", "--k", "4"]).0, 1);
}
