use std::path::Path;
use std::process::{Command, Output};

use givental_cli::output::read_table;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_givental"))
        .args(args)
        .env_remove(givental_cli::OUT_DIR_ENV)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_rep_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "rep", "--n", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all gl(3) relations: PASS"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "rep", "--n", "1"][..],
        &["verify", "intertwine", "--n", "5"],
        &["verify", "nonsense", "--n", "3"],
        &["wavefunction", "--n", "2", "--lambda", "0", "--grid", "x1=0,x2=0"],
        &["wavefunction", "--n", "2", "--grid", "x1=0"],
        &["eigencheck", "--n", "4"],
    ] {
        let o = run(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&["wavefunction", "--n", "2", "--lambda", "0"], dir.path());
    assert!(String::from_utf8_lossy(&o.stderr).contains("`lambda`"));
}

#[test]
fn other_suites_run() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "whittaker", "--n", "3"][..],
        &["verify", "pairing", "--n", "3"],
        &["verify", "appendix-b", "--n", "2"],
        &["verify", "intertwine", "--n", "3"],
        &["verify", "matrix", "--n", "3", "--charts", "5"],
    ] {
        let o = run(args, dir.path());
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).trim_end().lines().last().unwrap().contains(": PASS"));
    }
}

#[test]
fn wavefunction_table_manifest_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["wavefunction", "--n", "2", "--lambda", "0,0", "--grid", "x1=-2:2:41,x2=0", "--out-dir", "out"];
    let o = run(&args, dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = dir.path().join("out/wave_n2.csv");
    let rows = read_table(&csv).unwrap();
    assert_eq!(rows.len(), 41);
    let centre = rows.iter().find(|r| r.x == [0.0, 0.0]).unwrap();
    assert!((centre.value.re - 0.2277877).abs() < 1e-7);
    for r in &rows {
        assert!(r.error >= 0.0 && r.error.is_finite() && r.value.re.is_finite());
    }

    let manifest = std::fs::read_to_string(dir.path().join("out/wave_n2.json")).unwrap();
    let keys = ["\"command\"", "\"version\"", "\"n\"", "\"lambda\"", "\"hbar\"", "\"method\"", "\"grid\"", "\"rows\"", "\"tolerances\"", "\"box\"", "\"seed\"", "\"threads\"", "\"warnings\"", "\"table\"", "\"timing\""];
    let pos: Vec<usize> = keys.iter().map(|k| manifest.find(k).unwrap_or_else(|| panic!("{k} missing"))).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "manifest field order");

    // Same config, different thread count: identical bytes.
    let first = std::fs::read(&csv).unwrap();
    let o = run(&[&args[..], &["--threads", "2", "--output", "again"]].concat(), dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(dir.path().join("out/again.csv")).unwrap(), first);

    let o = run(&["plot", "--input", "out/wave_n2.csv", "--axis", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("out/wave_n2.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("polyline"));
}

#[test]
fn recursive_rank_three_rows_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["wavefunction", "--n", "3", "--lambda", "0.5,-0.5,0", "--grid", "x1=-0.5:0.5:2,x2=0,x3=0.2", "--seed", "3"];
    let a = run(&args, dir.path());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let first = std::fs::read(dir.path().join("wave_n3.csv")).unwrap();
    let b = run(&args, dir.path());
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(std::fs::read(dir.path().join("wave_n3.csv")).unwrap(), first);
    let rows = read_table(&dir.path().join("wave_n3.csv")).unwrap();
    assert!(rows.iter().all(|r| r.method == givental_core::quad::Method::Recursive));
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_givental"))
        .args(["wavefunction", "--n", "2", "--grid", "x1=0,x2=0", "--method", "closed-form"])
        .env(givental_cli::OUT_DIR_ENV, dir.path().join("env"))
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_table(&dir.path().join("env/wave_n2.csv")).unwrap();
    assert!((rows[0].value.re - 0.2277877).abs() < 1e-7);
}

#[test]
fn eigencheck_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["eigencheck", "--n", "2", "--lambda", "1,-1", "--point", "0,0"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS H2"));
    let o = run(&["eigencheck", "--n", "2", "--lambda", "1,-1", "--point", "0,0", "--tol", "1e-30"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.cfg"), "n = 2\nlambda = 1\nlambda = -1\npoint = 0\npoint = 0\nhbar = 3\n").unwrap();
    let o = run(&["eigencheck", "--config", "run.cfg", "--hbar", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("e2=-1.0"));
}
