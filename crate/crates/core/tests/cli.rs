use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rsdesign"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_fig1() {
    let o = run(&["verify", fixture("fig1.rsd").to_str().unwrap(), "2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lambda=1"));
}

#[test]
fn verify_fig2_spectral() {
    let o = run(&["verify", fixture("fig2.rsd").to_str().unwrap(), "2", "1", "--spectral"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("lambda=3"));
    assert!(out.contains("spectral: yes"));
    assert!(out.contains("agreement: yes"));
}

#[test]
fn verify_with_deleted_row() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("fig1.rsd")).unwrap();
    let kept: Vec<&str> = text.lines().take(10).collect();
    let path = dir.path().join("short.rsd");
    std::fs::write(&path, kept.join("\n") + "\n").unwrap();
    let o = run(&["verify", path.to_str().unwrap(), "2", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: R={2,3} S={2} omega=(3) observed=0 expected=1"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.rsd");
    std::fs::write(&path, "5 3 4\n0 0 1 1 1\n0 0 1 1 1\n").unwrap();
    let o = run(&["verify", path.to_str().unwrap(), "2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let o = run(&["verify", fixture("fig1.rsd").to_str().unwrap(), "3", "1", "--spectral"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn params_tables() {
    let o = run(&["params", "5", "3", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("|X|=270"));
    assert!(out.contains("multiplicity(2,1)=30"));
    assert!(out.contains("sum=270 equals |X|"));
    let out = stdout(&run(&["params", "3", "3", "2"]));
    assert!(out.contains("|X|=1"));
    assert!(out.contains("L=(0,0) (1,1) (2,2) (3,3)"));
}

#[test]
fn bounds_report() {
    let o = run(&["bounds", "5", "3", "4", "2", "1", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("fisher=5 PASS"));
    assert!(out.contains("natural=10 PASS"));
    let out = stdout(&run(&["bounds", "6", "4", "3", "2", "1", "15"]));
    assert!(out.contains("natural=5 PASS"));
    assert!(out.contains("implied lambda=3"));
    let o = run(&["bounds", "5", "3", "4", "2", "1", "9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("natural=10 FAIL"));
}

#[test]
fn construct_recipes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sts7.rsd");
    let o = run(&["construct", "sts-trivial", "n=7", "q=4", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rows=21 lambda=1"));
    let o = run(&["verify", path.to_str().unwrap(), "2", "1"]);
    assert!(stdout(&o).contains("lambda=1"));

    let o = run(&["construct", "full", "n=4", "w=2", "q=3", "s=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 13);

    let blocks = format!("blocks={}", fixture("sqs8.bd").display());
    let oa = format!("oa={}", fixture("mols4.oa").display());
    let o = run(&["construct", "file-file", &blocks, &oa]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(3,2) rows=126 lambda=1"));

    let o = run(&["construct", "full", "n=4", "w=2", "q=4", "s=2", &oa]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("found.rsd");
    let o = run(&["search", "5", "3", "4", "2", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rows=10 lambda=1"));
    assert_eq!(run(&["verify", path.to_str().unwrap(), "2", "1"]).status.code(), Some(0));

    let o = run(&["search", "3", "2", "3", "2", "1", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 7);

    let o = run(&["search", "5", "3", "2", "2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("10/3"));
}

#[test]
fn search_output_is_deterministic() {
    let a = run(&["search", "5", "3", "4", "2", "1"]);
    let b = run(&["search", "5", "3", "4", "2", "1", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_quick() {
    let o = run(&["selftest", "--quick"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("criterion ")).count(), 9);
}

#[test]
fn selftest_names_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("fig1.rsd")).unwrap().replace("0 0 1 1 1", "0 0 1 1 2");
    std::fs::write(dir.path().join("fig1.rsd"), text).unwrap();
    std::fs::copy(fixture("fig2.rsd"), dir.path().join("fig2.rsd")).unwrap();
    let o = run(&["selftest", "--quick", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("first failing criterion 1 (figure fixtures)"));
}
