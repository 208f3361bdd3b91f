use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const RECT: &str = "ORTHO 1\nP 4\n0 0\n4 0\n4 4\n0 4\nS 1\n2 0 2 4\n";
const L_PAIR: &str = "ORTHO 1\nP 6\n0 0\n4 0\n4 2\n2 2\n2 4\n0 4\nS 2\n1 2 1 4\n3 0 3 2\n";
const L_HORIZONTAL: &str = "ORTHO 1\nP 6\n0 0\n4 0\n4 2\n2 2\n2 4\n0 4\nS 1\n2 1 4 1\n";

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slidepursuit")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_cover_exit_codes() {
    let d = TempDir::new().unwrap();
    let o = bin(&["check-cover", "--instance", s(&file(&d, "r.txt", RECT))]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "COMPLETE"));
    let o = bin(&["check-cover", "--instance", s(&file(&d, "h.txt", L_HORIZONTAL))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("INCOMPLETE witness "));
    let o = bin(&["check-cover", "--instance", s(&file(&d, "bad.txt", "ORTHO 2\n"))]);
    assert_eq!(code(&o), 2);
    let o = bin(&["check-cover", "--instance", s(&d.path().join("missing.txt"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn simulate_and_verify() {
    let d = TempDir::new().unwrap();
    let inst = file(&d, "l.txt", L_PAIR);
    let trace = d.path().join("t.jsonl");
    let o = bin(&["simulate", "--instance", s(&inst), "--trace", s(&trace)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("verdict=Cleared robots=2 "), "{}", stdout(&o));
    let o = bin(&["verify", "--instance", s(&inst), "--trace", s(&trace)]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "verdict=Cleared"));
    let o = bin(&["verify", "--instance", s(&inst), "--trace", s(&trace), "--scale", "4"]);
    assert_eq!(code(&o), 0);

    let text = fs::read_to_string(&trace).unwrap();
    let truncated: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
    let short = file(&d, "short.jsonl", &truncated);
    let o = bin(&["verify", "--instance", s(&inst), "--trace", s(&short)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("verdict=Contaminated"), "{}", stdout(&o));

    let other = file(&d, "r.txt", RECT);
    let o = bin(&["verify", "--instance", s(&other), "--trace", s(&trace)]);
    assert_eq!(code(&o), 2);
    let junk = file(&d, "junk.jsonl", "not json\n");
    assert_eq!(code(&bin(&["verify", "--instance", s(&inst), "--trace", s(&junk)])), 2);
}

#[test]
fn simulate_rejects_bad_input() {
    let d = TempDir::new().unwrap();
    let o = bin(&["simulate", "--instance", s(&file(&d, "h.txt", L_HORIZONTAL))]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("do not cover"));
    let o = bin(&["simulate", "--instance", s(&file(&d, "r.txt", RECT)), "--start-robot", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn simulate_stalls_on_tiny_budget() {
    let d = TempDir::new().unwrap();
    let o = bin(&["simulate", "--instance", s(&file(&d, "r.txt", RECT)), "--budget", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("verdict=Stalled"));
}

#[test]
fn all_starts_sweep() {
    let d = TempDir::new().unwrap();
    let o = bin(&["simulate", "--instance", s(&file(&d, "l.txt", L_PAIR)), "--all-starts"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains("verdict=Cleared")).count(), 4);
    assert!(out.trim_end().ends_with("runs=4 failures=0"));
}

#[test]
fn gen_is_deterministic() {
    let d = TempDir::new().unwrap();
    let a = d.path().join("a.txt");
    let b = d.path().join("b.txt");
    assert_eq!(code(&bin(&["gen", "--seed", "0", "--steps", "1", "--out", s(&a)])), 0);
    assert_eq!(code(&bin(&["gen", "--seed", "0", "--steps", "1", "--out", s(&b)])), 0);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.contains("\nP 6\n"), "seed 0 with one step is an L-shape:\n{text}");
    assert_eq!(code(&bin(&["check-cover", "--instance", s(&a)])), 0);
    let o = bin(&["gen", "--seed", "0", "--steps", "1", "--out", s(&d.path().join("no/such/dir.txt"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn simulate_outputs_are_byte_identical() {
    let d = TempDir::new().unwrap();
    let inst = file(&d, "l.txt", L_PAIR);
    let mut outputs = Vec::new();
    for k in 0..2 {
        let t = d.path().join(format!("t{k}.jsonl"));
        let v = d.path().join(format!("v{k}.svg"));
        let o = bin(&[
            "simulate",
            "--instance",
            s(&inst),
            "--start-robot",
            "1",
            "--start-end",
            "high",
            "--trace",
            s(&t),
            "--svg",
            s(&v),
        ]);
        assert_eq!(code(&o), 0);
        outputs.push((fs::read(&t).unwrap(), fs::read(&v).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn render_frames() {
    let d = TempDir::new().unwrap();
    let inst = file(&d, "r.txt", RECT);
    let trace = d.path().join("t.jsonl");
    assert_eq!(code(&bin(&["simulate", "--instance", s(&inst), "--trace", s(&trace)])), 0);
    let svg = d.path().join("f0.svg");
    assert_eq!(
        code(&bin(&["render", "--instance", s(&inst), "--trace", s(&trace), "--frame", "0", "--svg", s(&svg)])),
        0
    );
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<?xml"));
    let plain = d.path().join("plain.svg");
    assert_eq!(code(&bin(&["render", "--instance", s(&inst), "--svg", s(&plain)])), 0);
    let o = bin(&["render", "--instance", s(&inst), "--trace", s(&trace), "--frame", "500", "--svg", s(&svg)]);
    assert_eq!(code(&o), 2);
}
