use std::fs;
use std::path::Path;

use nnfopt::cli::run;

fn nnfopt(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nnfopt").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn demo() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = nnfopt(&["gen", "pkg-demo", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
    dir
}

#[test]
fn package_demo_minimal_change() {
    let dir = demo();
    let d = dir.path();
    let (code, out, _) = nnfopt(&[
        "optimize",
        "--circuit",
        &p(d, "pkg.nnf"),
        "--base",
        &p(d, "minchange.wb"),
        "--condition",
        "A B1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "algorithm dnnf-linear\nfamily L^+_+\naggregator sum\nstatus OPTIMAL\nscore 4\n\
         model v1=1 v2=1 v3=0 v4=1 v5=1 v6=0 v7=0 v8=0 v9=0\ntrue A A1 B B1\n"
    );
}

#[test]
fn condition_by_names_and_indices_agree() {
    let dir = demo();
    let d = dir.path();
    let (c1, by_name, _) = nnfopt(&["condition", "--circuit", &p(d, "pkg.nnf"), "--term", "A -B2"]);
    let (c2, by_index, _) = nnfopt(&["condition", "--circuit", &p(d, "pkg.nnf"), "--term", "1 -6"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(by_name, by_index);
    assert!(by_name.starts_with("nnf "));
}

#[test]
fn leximax_scores_print_as_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("t.nnf"), "nnf 1 0 2\nA 0\n").unwrap();
    fs::write(d.join("b.wb"), "wb 2 2 leximax\n2 t 1 2 0\n1 t -2 0\n").unwrap();
    let (code, out, _) = nnfopt(&["optimize", "--circuit", &p(d, "t.nnf"), "--base", &p(d, "b.wb")]);
    assert_eq!(code, 0);
    assert!(out.contains("aggregator leximax\n"), "{out}");
    assert!(out.contains("score (0, 0)\n"), "{out}");
    assert!(out.contains("model v1=0 v2=1\n"), "{out}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("false.nnf"), "nnf 1 0 0\nO 0 0\n").unwrap();
    fs::write(d.join("true.nnf"), "nnf 1 0 1\nA 0\n").unwrap();
    fs::write(d.join("bad.nnf"), "nnf 2 0 1\nA 0\n").unwrap();
    fs::write(d.join("empty.wb"), "wb 0 1 sum\n").unwrap();

    assert_eq!(nnfopt(&["consistent", "--circuit", &p(d, "false.nnf")]).0, 1);
    assert_eq!(nnfopt(&["consistent", "--circuit", &p(d, "true.nnf")]).0, 0);
    let (code, out, _) = nnfopt(&["optimize", "--circuit", &p(d, "false.nnf"), "--base", &p(d, "empty.wb")]);
    assert_eq!(code, 1);
    assert!(out.contains("status NO_SOLUTION"));
    let (code, _, err) = nnfopt(&["check", "--circuit", &p(d, "bad.nnf")]);
    assert_eq!(code, 3);
    assert!(err.starts_with("error: "));
    assert_eq!(nnfopt(&["optimize", "--algo", "simplex"]).0, 2);
    assert_eq!(nnfopt(&[]).0, 2);
    assert_eq!(nnfopt(&["--help"]).0, 0);
}

#[test]
fn refusal_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let n = 30;
    let mut nnf = format!("nnf {} {} {n}\n", n + 1, n);
    for i in 1..=n {
        nnf.push_str(&format!("L {i}\n"));
    }
    nnf.push_str(&format!("A {n}"));
    for i in 0..n {
        nnf.push_str(&format!(" {i}"));
    }
    nnf.push('\n');
    fs::write(d.join("big.nnf"), nnf).unwrap();
    fs::write(d.join("g.nnf"), "nnf 3 2 2\nL 1\nL -2\nO 0 2 0 1\n").unwrap();
    let mut wb = format!("wb 20 {n} sum\n");
    for _ in 0..20 {
        wb.push_str("1 f g.nnf\n");
    }
    fs::write(d.join("general.wb"), wb).unwrap();
    let (code, out, err) = nnfopt(&["optimize", "--circuit", &p(d, "big.nnf"), "--base", &p(d, "general.wb")]);
    assert_eq!(code, 4, "{out}{err}");
    assert!(err.contains("not fixed-parameter tractable"), "{err}");
}

#[test]
fn generators_write_loadable_instances() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("sets.txt"), "a b\nb c\n").unwrap();
    let out = p(d, "hs");
    assert_eq!(nnfopt(&["gen", "hitting-set", "--sets", &p(d, "sets.txt"), "--out", &out]).0, 0);
    let hs = d.join("hs");
    let (code, text, _) =
        nnfopt(&["optimize", "--circuit", &p(&hs, "instance.nnf"), "--base", &p(&hs, "instance.wb")]);
    assert_eq!(code, 0);
    assert!(text.contains("score 1\n") && text.contains("true b\n"), "{text}");

    fs::write(d.join("mixed.cnf"), "p cnf 2 1\n1 -2 0\n").unwrap();
    let (code, _, err) = nnfopt(&["gen", "posneg", "--cnf", &p(d, "mixed.cnf"), "--out", &p(d, "pn")]);
    assert_eq!(code, 2);
    assert!(err.contains("clause"), "{err}");
}

#[test]
fn obdd_linearize_with_item_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("phi.obdd"), "obdd 2 0\norder 1 2\nroot 1\n").unwrap();
    fs::write(d.join("or.obdd"), "obdd 2 2\norder 1 2\n2 2 0 1\n3 1 2 1\nroot 3\n").unwrap();
    let item = format!("1:{}", p(d, "or.obdd"));
    let (code, out, err) = nnfopt(&["optimize", "--algo", "obdd-linearize", "--obdd", &p(d, "phi.obdd"), "--item", &item]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("algorithm obdd-linearize\n"));
    assert!(out.contains("score 0\nmodel v1=0 v2=0\n"), "{out}");
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let dir = demo();
    let d = dir.path();
    fs::write(d.join("terms.wb"), "wb 3 9 sum\n2 t 2 -3 0\n-1 t 7 0\n3 t -5 8 0\n").unwrap();
    let args = |jobs: &'static str| {
        vec![
            "optimize".to_string(),
            "--circuit".into(),
            p(d, "pkg.nnf"),
            "--base".into(),
            p(d, "terms.wb"),
            "--jobs".into(),
            jobs.into(),
        ]
    };
    let run_with = |jobs| {
        let a = args(jobs);
        nnfopt(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let one = run_with("1");
    assert_eq!(one.0, 0);
    assert!(one.1.starts_with("algorithm fpt-poly\n"));
    assert_eq!(run_with("1"), one);
    assert_eq!(run_with("4"), one);
}
