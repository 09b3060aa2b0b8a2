use std::io::Write;
use std::process::{Command, Output, Stdio};

const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_linkcolor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus(file: &str) -> String {
    format!("{}/corpus/{file}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn gen_pipes_into_invariants() {
    let g = run(&["gen", "torus2", "4"], "");
    assert!(g.status.success());
    let o = run(&["invariants"], &stdout(&g));
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("determinant 4"), "{s}");
    assert!(s.contains("0 2") || s.contains("0 -2"), "{s}");
}

#[test]
fn pretzel_two_tone_witness_rechecks() {
    let g = stdout(&run(&["gen", "pretzel", "6,6,6"], ""));
    let o = run(&["dihedral", "--n", "5", "--two-tone"], &g);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("two-tone D_5: colorable"), "{s}");
    // The printed witness is enough to re-verify without the solver.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.txt");
    std::fs::write(&path, s.lines().skip(1).collect::<Vec<_>>().join("\n")).unwrap();
    let c = run(&["check", "--coloring", path.to_str().unwrap()], &g);
    assert_eq!(stdout(&c).trim(), "valid");
    assert!(c.status.success());
}

#[test]
fn hopf_is_not_two_tone_for_three() {
    let o = run(&["dihedral", "--n", "3", "--two-tone", "--text", HOPF], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("two-tone D_3: not colorable"));
}

#[test]
fn surjection_over_infinite_dihedral() {
    let o = run(
        &["dihedral", "--inf", "--surjective", "--text", "X[6,1,7,2] X[10,7,5,8] X[4,5,1,6] X[2,10,3,9] X[8,4,9,3]"],
        "",
    );
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("surjection onto D_inf: exists"));
}

#[test]
fn parse_is_idempotent() {
    let once = stdout(&run(&["parse", "--text", "PD[X[3,1,4,6], X[1,5,2,4], X[5,3,6,2]]"], ""));
    let twice = stdout(&run(&["parse"], &once));
    assert_eq!(once, twice);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run(&["parse", "--text", "X[1,2]"], "").status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&["fox", "--n", "1", "--text", HOPF], "").status.code(), Some(2));
    assert_eq!(run(&["dihedral", "--text", HOPF], "").status.code(), Some(2));
    assert_eq!(run(&["gen", "standard", "1"], "").status.code(), Some(2));
    assert_eq!(run(&["verify", "--corpus", "/nonexistent/corpus.tsv"], "").status.code(), Some(2));
}

#[test]
fn fox_verdict() {
    let o = run(&["fox", "--n", "3", "--text", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"], "");
    assert_eq!(stdout(&o).trim(), "fox 3: colorable (9 colorings)");
}

#[test]
fn classify_reports_rows() {
    let o = run(&["classify", "--n-range", "3..5", "--text", HOPF], "");
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("determinant 2"));
    assert_eq!(s.lines().count(), 2 + 4);
}

#[test]
fn bundled_corpus_verifies() {
    let o = run(&["verify", "--config", &corpus("verify.toml")], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.lines().count() > 15);
    assert!(s.lines().skip(1).all(|l| l.contains(",true,")), "{s}");
}

#[test]
fn corrupted_corpus_names_the_fixture() {
    let o = run(&["verify", "--corpus", &corpus("corrupted.tsv")], "");
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("trefoil-bad-claim"), "{err}");
}

#[test]
fn empty_corpus_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.tsv");
    std::fs::write(&path, "# nothing here\n").unwrap();
    let o = run(&["verify", "--corpus", path.to_str().unwrap(), "--format", "record"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn capacity_errors_exit_three() {
    let o = run(&["verify", "--corpus", &corpus("links.tsv"), "--cap", "2"], "");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn records_are_written_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    for p in [&a, &b] {
        let o = run(
            &[
                "verify",
                "--corpus",
                &corpus("links.tsv"),
                "--n-range",
                "3..6",
                "--format",
                "record",
                "--out",
                p.to_str().unwrap(),
            ],
            "",
        );
        assert!(o.status.success());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
}
