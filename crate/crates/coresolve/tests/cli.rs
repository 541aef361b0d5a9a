//! End-to-end checks of the command-line interface: exit codes, trace line
//! format, statistics output, and the built-in generator check.

mod common;

use std::io::Write;
use std::process::Command;

fn coresolve() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coresolve"))
}

fn fixture(name: &str) -> String {
    common::fixture_path(name).display().to_string()
}

fn run_on_corpus(extra: &[&str]) -> std::process::Output {
    coresolve()
        .arg("resolve")
        .arg(fixture("corpus.json"))
        .arg("--lexicon")
        .arg(fixture("lexicon.json"))
        .arg("--rules")
        .arg(fixture("rules.json"))
        .args(extra)
        .output()
        .expect("binary runs")
}

#[test]
fn resolving_the_fixture_corpus_succeeds() {
    let out = run_on_corpus(&[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("doc=ex2 sentence=0 outcome=complete module_calls=4"));
    assert!(stdout.contains("doc=ex1 sentence=0 outcome=complete module_calls=2"));
    assert!(stdout.contains("doc=chain sentence=0 outcome=complete module_calls=6"));
}

#[test]
fn trace_lines_use_the_key_value_format() {
    let out = run_on_corpus(&["--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("pass=4 module=ATTACHMENT action=ATTACH target=p_in detail=f_surge.THEME")
    );
    assert!(stdout
        .contains("pass=1 module=ANAPHORA action=SKIP target=a_its detail=blocked-by-pp:p_since"));
}

#[test]
fn stats_and_oracle_check_report_on_stdout() {
    let out = run_on_corpus(&["--stats", "--oracle-check"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("oracle-check: ok (3 documents)"));
    assert!(stdout.contains("anaphors=5 pps=9 case_a=1 case_b=4 case_c=4 mean_module_calls=4.000"));
}

#[test]
fn fuzz_mode_reports_agreement() {
    let out = run_on_corpus(&["--fuzz", "250", "--seed", "9"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("fuzz: 250 instances seed=9 ok"));
}

#[test]
fn missing_file_exits_with_io_code() {
    let out = coresolve()
        .arg("resolve")
        .arg("/nonexistent/corpus.json")
        .arg("--lexicon")
        .arg(fixture("lexicon.json"))
        .arg("--rules")
        .arg(fixture("rules.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_json_exits_with_parse_code() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"{not json").unwrap();
    let out = coresolve()
        .arg("resolve")
        .arg(f.path())
        .arg("--lexicon")
        .arg(fixture("lexicon.json"))
        .arg("--rules")
        .arg(fixture("rules.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn validation_failure_exits_with_code_two() {
    // Structurally sound corpus whose head lemma is missing from the lexicon.
    let corpus = br#"{"documents":[{"id":"d","sentences":[{"index":0,
        "tokens":[{"i":0,"surface":"of","lemma":"of"},
                  {"i":1,"surface":"nowhere","lemma":"nowhere"}],
        "nps":[{"id":"e1","span":[1,2],"head":"nowhere","class":"EVENT",
                "gender":"neut","number":"sing"}],
        "anaphors":[],
        "pps":[{"id":"p1","prep":"of","object":"e1","position":0,"sites":[{"np":"e1"}]}],
        "frames":[]}]}]}"#;
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(corpus).unwrap();
    let out = coresolve()
        .arg("resolve")
        .arg(f.path())
        .arg("--lexicon")
        .arg(fixture("lexicon.json"))
        .arg("--rules")
        .arg(fixture("rules.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere"));
}

#[test]
fn oracle_mismatch_exit_code_is_reachable() {
    // Sanity-check the exit code contract: disagreement is code 3. The
    // shipped fixtures never disagree, so drive the flag over the generated
    // suite instead and expect success; the mismatch path is covered by the
    // unit tests on compare().
    let out = run_on_corpus(&["--oracle-check", "--fuzz", "50"]);
    assert_eq!(out.status.code(), Some(0));
}
