use std::path::{Path, PathBuf};
use std::process::{Command, Output};

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("oblivious-dicut-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Self(dir)
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_oblivious-dicut"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn ratio_prints_the_certified_interval_first() {
    let out = stdout(&run(&["ratio", "--fn", "uniform"]));
    assert_eq!(out.lines().next(), Some("0.25 0.25"));
    let out = stdout(&run(&["ratio", "--fn", "f-delta:1/3", "--sym-reduce"]));
    assert_eq!(out.lines().next(), Some("0.375 0.375"));
}

#[test]
fn certificate_and_witness_files_check_out() {
    let s = Scratch::new("cert");
    let cert = s.path("c.cert");
    let witness = s.path("w.graph");
    stdout(&run(&["ratio", "--fn", "f-delta:2/5", "--cert", p(&cert), "--witness", p(&witness)]));
    let out = stdout(&run(&["verify", "--cert", p(&cert), "--fn", "f-delta:2/5"]));
    assert!(out.starts_with("certificate ok"));
    let wrong = run(&["verify", "--cert", p(&cert), "--fn", "uniform"]);
    assert_eq!(wrong.status.code(), Some(5));
    let tampered = std::fs::read_to_string(&cert).unwrap().replacen("lower ", "lower 1", 1);
    let bad = s.file("bad.cert", &tampered);
    assert_ne!(run(&["verify", "--cert", p(&bad), "--fn", "f-delta:2/5"]).status.code(), Some(0));
    let opt = stdout(&run(&["opt", "--graph", p(&witness)]));
    assert!(opt.starts_with("opt "));
}

#[test]
fn step_function_files_are_accepted() {
    let s = Scratch::new("stepfn");
    let f = s.file("f.stepfn", "stepfn v1\n0 1/3 0\n1/3 2/3 1/2\n2/3 1 1\n@ 1/3 1/2\n@ 2/3 1/2\n");
    let out = stdout(&run(&["ratio", "--fn", p(&f)]));
    assert_eq!(out.lines().next(), Some("0.375 0.375"));
}

#[test]
fn eval_reports_exact_and_sampled_values() {
    let s = Scratch::new("eval");
    let g = s.file("g", "dicut-graph v1 2\n0 1 2/3\n1 0 1/3\n");
    let out = stdout(&run(&["eval", "--graph", p(&g), "--fn", "f-delta:1/3", "--mc", "20000", "--seed", "5"]));
    assert!(out.starts_with("expected 1/4 (0.25)"), "{out}");
    assert!(out.contains("monte-carlo mean"));
    assert_eq!(out, stdout(&run(&["eval", "--graph", p(&g), "--fn", "f-delta:1/3", "--mc", "20000", "--seed", "5"])));
}

#[test]
fn malformed_input_exits_with_two() {
    let s = Scratch::new("malformed");
    let g = s.file("g", "dicut-graph v1 2\n0 7 1\n");
    let o = run(&["opt", "--graph", p(&g)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2, column 3"), "{err}");
    assert_eq!(run(&["ratio", "--fn", "f-delta"]).status.code(), Some(2));
    assert_eq!(run(&["ratio"]).status.code(), Some(2));
}

#[test]
fn limits_exit_with_three() {
    let s = Scratch::new("limits");
    let g = s.file("g", "dicut-graph v1 5\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n");
    let o = run_env(&["opt", "--graph", p(&g)], &[("OBLIVIOUS_DICUT_MAX_BRUTE", "4")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(run_env(&["opt", "--graph", p(&g)], &[("OBLIVIOUS_DICUT_MAX_BRUTE", "5")]).status.success());
    let o = run(&["ratio", "--fn", "paper-0483", "--time-limit", "0.2"]);
    assert_eq!(o.status.code(), Some(3));
    let heavy = s.file("h", "dicut-graph v1 2\n0 1 1\n1 0 1/100000\n");
    let o = run(&["expand", "--graph", p(&heavy), "--out", p(&s.path("x"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reduction_and_expansion_write_graphs() {
    let s = Scratch::new("reduce");
    let phi = s.file("phi", "twoand v1 2\n+1 +2 1\n-1 +2 1\n+1 -2 1\n-1 -2 1\n");
    let out_g = s.path("g");
    stdout(&run(&["reduce2and", "--in", p(&phi), "--out", p(&out_g)]));
    let opt = stdout(&run(&["opt", "--graph", p(&out_g)]));
    assert!(opt.starts_with("opt 2 (2)"), "{opt}");
    let x = s.path("x");
    let out = stdout(&run(&["expand", "--graph", p(&out_g), "--out", p(&x)]));
    assert!(out.contains("copies per vertex 1"));
    let sparse = s.file("sparse", "twoand v1 3\n+1 +2 1\n");
    let out = stdout(&run(&["reduce2and", "--in", p(&sparse), "--out", p(&s.path("y"))]));
    assert!(out.contains("variable 3 has no occurrences"));
}

#[test]
fn search_is_independent_of_thread_count() {
    let s = Scratch::new("search");
    let (l1, l2) = (s.path("l1"), s.path("l2"));
    let a = stdout(&run(&["search", "--n", "2", "--jobs", "1", "--ledger", p(&l1)]));
    let b = stdout(&run(&["search", "--n", "2", "--jobs", "3", "--ledger", p(&l2)]));
    assert_eq!(a, b);
    assert_eq!(std::fs::read(&l1).unwrap(), std::fs::read(&l2).unwrap());
    assert!(std::fs::read_to_string(&l1).unwrap().lines().filter(|l| !l.starts_with('#')).count() >= 9);
}

#[test]
fn bound_and_mixmax_report_values() {
    let out = stdout(&run(&["bound", "--c", "5/4", "--g1", "1", "--g2", "3"]));
    assert!(out.contains("max 533/1088"), "{out}");
    let s = Scratch::new("mixmax");
    let g = s.file("g", "dicut-graph v1 3\n0 2 2\n0 1 3\n1 0 3001/1000\n");
    let out = stdout(&run(&[
        "mixmax", "--graph", p(&g), "--members", "uniform", "greedy", "--mix", "4/5", "1/5", "--trials", "200",
    ]));
    assert!(out.contains("opt 5 (5)"), "{out}");
    assert!(out.contains("greedy cut 2 (2)"), "{out}");
    assert!(out.contains("mix "), "{out}");
}
