use std::path::Path;
use std::process::{Command, Output};

fn delta_cat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delta-cat"))
        .args(args)
        .env_remove("DELTA_CAT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn doc(dir: &Path, name: &str, src: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, src).unwrap();
    p.to_str().unwrap().to_string()
}

const POWERS: &str = "(model findiff)\n(def sq (prim sq))\n(def sq4 (comp sq sq))\n";

#[test]
fn eval_and_diff() {
    let dir = tempfile::tempdir().unwrap();
    let f = doc(dir.path(), "doc.dc", POWERS);

    let o = delta_cat(&["eval", "--model", "findiff", &f, "sq4", "(1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1)\n");
    assert_eq!(stdout(&delta_cat(&["eval", &f, "sq4", "(-3)"])), "(81)\n");

    let o = delta_cat(&["diff", "--order", "2", &f, "sq"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "(diff (diff (prim sq)))\n; (prod (prod Z Z) (prod Z Z)) -> Z\n"
    );
}

#[test]
fn show_is_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let f = doc(dir.path(), "doc.dc", POWERS);
    let once = stdout(&delta_cat(&["show", &f]));
    let g = doc(dir.path(), "again.dc", &once);
    assert_eq!(stdout(&delta_cat(&["show", &g])), once);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = doc(dir.path(), "doc.dc", POWERS);
    let bad = doc(dir.path(), "bad.dc", "(def t (comp (prim sq) (pair (id Z) (id Z))))\n");

    assert_eq!(delta_cat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(delta_cat(&["laws", "--model", "nope"]).status.code(), Some(2));
    assert_eq!(delta_cat(&["laws", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(delta_cat(&["eval", "missing.dc", "sq", "(1)"]).status.code(), Some(2));

    let o = delta_cat(&["show", &bad]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(":1:"), "{err}");
    assert_eq!(delta_cat(&["eval", &f, "sq", "(1 2)"]).status.code(), Some(3));
    assert_eq!(delta_cat(&["eval", &f, "cube", "(1)"]).status.code(), Some(3));

    // sq is no differential map: the negative control fails with code 1.
    let o = delta_cat(&[
        "laws",
        "--file",
        &f,
        "--term",
        "sq",
        "--law",
        "CD2_DIFFERENTIAL",
        "--trials",
        "50",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn laws_report_stream() {
    let o = delta_cat(&[
        "laws", "--model", "findiff", "--suite", "cdc", "--seed", "42", "--trials", "200",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    for l in &lines {
        assert_eq!(l["failures"], 0);
        assert_eq!(l["seed"], 42);
        assert_eq!(l["schema"], 1);
    }

    let o = delta_cat(&["laws", "--law", "CD0", "--trials", "5", "--format", "table"]);
    assert!(stdout(&o).starts_with("law "));
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_delta-cat"));
        c.args(["monad", "--model", "module:r=2", "--trials", "20"]);
        match env {
            Some(s) => c.env("DELTA_CAT_SEED", s),
            None => c.env_remove("DELTA_CAT_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert!(run(None).contains("\"seed\":42"));
    assert!(run(Some("7")).contains("\"seed\":7"));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["laws", "--model", "smooth", "--suite", "lemmas", "--trials", "60"][..],
        &["laws", "--model", "stream:depth=8", "--suite", "cdc", "--trials", "60"][..],
        &["monad", "--model", "findiff", "--seed", "5", "--trials", "60"][..],
    ] {
        let (a, b) = (delta_cat(args), delta_cat(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn kleisli_composes() {
    let dir = tempfile::tempdir().unwrap();
    let f = doc(
        dir.path(),
        "k.dc",
        "(model findiff)\n(def f (pair (prim sq) (id Z)))\n(def g (pair (id Z) (prim sq)))\n",
    );
    let o = delta_cat(&["kleisli", &f, "f", "g", "--at", "(3)"]);
    assert_eq!(o.status.code(), Some(0));
    // f(3) = (9, 3); T(g)(9, 3) = ((9, 81), (3, 144 - 81)); mu adds the
    // three tangent parts: 81 + 3 + 63.
    assert_eq!(stdout(&o).lines().last(), Some("(9 147)"));
    assert_eq!(delta_cat(&["kleisli", &f, "f", "nope"]).status.code(), Some(3));
}

#[test]
fn stream_depth_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = doc(dir.path(), "s.dc", "(model stream:depth=8)\n(def d (prim delay))\n");
    let o = delta_cat(&["eval", "--stream-depth", "3", &f, "d", "[1 2 3]"]);
    assert_eq!(stdout(&o), "([0 1 2])\n");
    assert_eq!(
        delta_cat(&["eval", "--stream-depth", "2", &f, "d", "[1 2 3]"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        delta_cat(&["laws", "--model", "findiff", "--stream-depth", "3"])
            .status
            .code(),
        Some(2)
    );
}
