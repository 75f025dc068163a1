use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gf2codes"));
    c.env_remove("GF2CODES_MAX_NODES").env_remove("GF2CODES_WORK_BUDGET");
    c
}

fn lemma2() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/lemma2.gen")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn griesmer_9_21() {
    let o = run(&["griesmer", "9", "21"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "47");
}

#[test]
fn weight_distribution_of_stated_matrix() {
    let o = run(&["wd", lemma2().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0:1 20:235 24:171 28:97 32:8");
}

#[test]
fn dual_and_mindist() {
    let p = lemma2();
    let o = run(&["dual", p.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("0:1 3:1 4:276 "));
    assert_eq!(stdout(&run(&["mindist", p.to_str().unwrap()])).trim(), "20");
    assert_eq!(stdout(&run(&["aut", p.to_str().unwrap()])).trim(), "1");
}

#[test]
fn iso_with_itself() {
    let p = lemma2();
    let o = run(&["iso", p.to_str().unwrap(), p.to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("equivalent"));
    let witness: Vec<usize> = lines.next().unwrap()["witness ".len()..]
        .split(' ')
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(witness.len(), 46);
}

#[test]
fn canon_output_reparses_and_is_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["canon", lemma2().to_str().unwrap(), "--check", "5", "--seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("# invariant under 5 re-encodings (seed 7)"));
    let p = write(&dir, "canon.gen", &text);
    let again = run(&["canon", &p]);
    let cert = |s: &str| s.lines().next().unwrap().to_string();
    assert_eq!(cert(&stdout(&again)), cert(&text));
}

#[test]
fn residual_of_a_row() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "h.gen", "1110000\n0111100\n1010101\n");
    let o = run(&["residual", &p, "1110000"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.starts_with("# [4, 2"), "{s}");
    let q = write(&dir, "r.gen", &s);
    assert!(run(&["wd", &q]).status.success());
}

#[test]
fn malformed_matrix_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "bad.gen", "1010\n10x0\n");
    let o = run(&["wd", &p]);
    assert_eq!(o.status.code(), Some(64));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2, column 3"), "{err}");
    let p = write(&dir, "short.gen", "1010\n101\n");
    assert_eq!(run(&["wd", &p]).status.code(), Some(64));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["griesmer", "nine", "21"]).status.code(), Some(64));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(run(&["verify-paper", "--check", "L99"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn lp_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "a.lp", "var x y\nmaximize x + y\nc1: x + 2 y <= 4\nc2: 3 x + y <= 6\n");
    let o = run(&["lp", &p]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("14/5"), "{}", stdout(&o));
}

#[test]
fn classify_is_independent_of_workers() {
    let args = ["classify", "--k", "3", "--nmax", "40", "--weights", "20..32:4"];
    let a = run(&[&args[..], &["--workers", "1"]].concat());
    let b = run(&[&args[..], &["--workers", "4"]].concat());
    assert!(a.status.success());
    let sorted = |o: &Output| {
        let mut v: Vec<String> = stdout(o).lines().map(String::from).collect();
        v.sort();
        v
    };
    assert_eq!(sorted(&a), sorted(&b));
    let s = run(&[&args[..], &["--summary"]].concat());
    let counts: Vec<String> = stdout(&s)
        .lines()
        .filter(|l| !l.ends_with("count=0"))
        .map(String::from)
        .collect();
    let expect: Vec<String> = [(35, 1), (36, 1), (37, 2), (38, 4), (39, 6), (40, 9)]
        .iter()
        .map(|(n, c)| format!("k=3 n={n} count={c}"))
        .collect();
    assert_eq!(counts, expect);
}

#[test]
fn extend_from_parent_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["classify", "--k", "2", "--nmin", "36", "--nmax", "36", "--weights", "20..32:4"]);
    let parent = write(&dir, "k2n36.db", &stdout(&o));
    let o = run(&["extend", "--parents", &parent, "--k", "3", "--n", "37"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("CODEDB v1 n=37 k=3"), "{}", stdout(&o));
}

#[test]
fn budget_exhaustion_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["classify", "--k", "4", "--nmax", "41", "--weights", "20..32:4", "--summary"])
        .arg("--db-dir")
        .arg(dir.path())
        .args(["--chunk", "1"])
        .env("GF2CODES_WORK_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    // resuming from the checkpoint without a cap completes the run
    let o = bin()
        .args(["classify", "--k", "4", "--nmax", "41", "--weights", "20..32:4", "--summary"])
        .arg("--db-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("k=4 n=41 count=26"));
}

#[test]
fn config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "run.cfg", "max_len = 20\n");
    let o = run(&["--config", &cfg, "wd", lemma2().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the configured cap 20"));
}

#[test]
fn verify_paper_tier0_single_check() {
    let o = run(&["verify-paper", "--tier", "0", "--check", "L2-CODE", "--machine"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("CHECK L2-CODE pass "));
    let o = run(&["verify-paper", "--tier", "0", "--check", "L1", "--machine"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("CHECK L1 fail solution"));
}
