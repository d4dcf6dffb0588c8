use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use morphseg::corpus::parse_lexicon;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_morphseg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// A few hundred words from the bundled corpus.
fn small_corpus(dir: &Path) -> PathBuf {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/english.lex")).unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).step_by(10).collect();
    let path = dir.join("small.lex");
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn train_analyze_stats() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus(dir.path());
    let model = dir.path().join("m.model");
    let o = run(&["train", "--corpus", s(&corpus), "--algo", "igtree", "--model", s(&model)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("words\t"));
    assert!(out.contains("feature\toffset\tgain\tgain_ratio\n"));

    let o = run(&["stats", "--model", s(&model)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "nodes\tarcs\tunique_vectors\tfeatures\tcompression");
    assert_eq!(lines[1].split('\t').nth(3), Some("7"));

    let input = dir.path().join("words.txt");
    std::fs::write(&input, "walked\nunkindness\n\nzzz\n").unwrap();
    let o = run(&["analyze", "--model", s(&model), "--input", s(&input)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let analyses = parse_lexicon(&stdout(&o)).unwrap();
    let surfaces: Vec<&str> = analyses.iter().map(|w| w.surface()).collect();
    assert_eq!(surfaces, ["walked", "unkindness", "zzz"]);
    assert!(stderr(&o).contains("words/s"));
}

#[test]
fn analyze_reads_stdin_and_flags_bad_words() {
    use std::io::Write;
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus(dir.path());
    let model = dir.path().join("m.model");
    assert_eq!(run(&["train", "--corpus", s(&corpus), "--algo", "ib1", "--model", s(&model)]).status.code(), Some(0));
    let mut child = bin()
        .args(["analyze", "--model", s(&model)])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"kindly\nbad-word\nplayers\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).lines().count(), 2);
    assert!(stderr(&o).contains("word 1"));
}

#[test]
fn xval_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus(dir.path());
    let args = ["xval", "--corpus", s(&corpus), "--k", "3", "--task", "m2", "--algo", "ib1ig,igtree"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.starts_with("# xval task=M2 window=3,3 k=3 seed=7"));
    assert_eq!(out.lines().filter(|l| l.starts_with(char::is_numeric)).count(), 6);
    assert!(out.contains("\nttest\t"));
    let c = run(&["xval", "--corpus", s(&corpus), "--k", "3", "--seed", "8", "--algo", "ib1"]);
    assert_ne!(c.stdout, a.stdout);
}

#[test]
fn gain_lists_every_feature() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus(dir.path());
    let o = run(&["gain", "--corpus", s(&corpus), "--task", "m1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows[0].starts_with("0\t-3\t"));
    assert!(rows[6].starts_with("6\t+3\t"));

    let o = run(&["gain", "--corpus", s(&corpus), "--window", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus(dir.path());
    let empty = dir.path().join("empty.lex");
    std::fs::write(&empty, "# nothing here\n").unwrap();

    let o = run(&["train", "--corpus", s(&empty), "--model", s(&dir.path().join("x"))]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["xval", "--corpus", s(&corpus), "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));

    let missing = dir.path().join("no-such.model");
    let o = run(&["analyze", "--model", s(&missing)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no-such.model"));

    let model = dir.path().join("ib1.model");
    assert_eq!(run(&["train", "--corpus", s(&corpus), "--algo", "ib1", "--model", s(&model)]).status.code(), Some(0));
    assert_eq!(run(&["stats", "--model", s(&model)]).status.code(), Some(2));

    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["gain", "--corpus", s(&corpus), "--task", "m4"]).status.code(), Some(1));

    let bad = dir.path().join("bad.lex");
    std::fs::write(&bad, "walked\twalk/s ed/x\n").unwrap();
    let o = run(&["gain", "--corpus", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus(dir.path());
    let out = dir.path().join("gain.tsv");
    let o = run(&["gain", "--corpus", s(&corpus), "--output", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 8);
}
