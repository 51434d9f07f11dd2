use std::process::{Command, Output};

fn tpsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpsurf")).args(args).output().expect("binary runs")
}

fn job(name: &str) -> String {
    format!("{}/../../jobs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_segre() {
    let o = tpsurf(&["analyze", &job("segre.json")]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in ["n = 1", "dim V = 2", "case: dim2", "g = (u, v)", "strand = 2x2"] {
        assert!(out.lines().any(|l| l == line), "missing {line:?} in\n{out}");
    }
}

#[test]
fn implicitize_example() {
    let o = tpsurf(&["implicitize", &job("example.json")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    for line in ["deg F = 10", "deg phi = 2", "strand = 20x20", "certificate: 40/40 points PASS"] {
        assert!(out.lines().any(|l| l == line), "missing {line:?}");
    }
}

#[test]
fn interpolate_with_oracle_json() {
    let o = tpsurf(&["implicitize", &job("segre.json"), "--det-mode", "interpolate", "--oracle", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["implicit"]["equation"], "x0*x3 - x1*x2");
    assert_eq!(v["certificate"]["d"], 1);
    assert_eq!(v["analysis"]["n"], 1);
}

#[test]
fn basepoints_exit_two_with_report() {
    let o = tpsurf(&["implicitize", &job("basepoint.json"), "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["basepoints"]["status"], "found");
    assert!(!o.stderr.is_empty());
}

#[test]
fn usage_and_io_errors_exit_one() {
    assert_eq!(tpsurf(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(tpsurf(&["analyze", "/nonexistent/job.json"]).status.code(), Some(1));
    let dir = std::env::temp_dir().join(format!("tpsurf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"a": 1, "b": 1, "generators": ["s*u", "s*w", "t*u", "t*v"]}"#).unwrap();
    let o = tpsurf(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown variable `w`"));
}

#[test]
fn identical_runs_give_identical_output() {
    let args = ["implicitize", &job("segre.json"), "--json", "--seed", "9"];
    assert_eq!(tpsurf(&args).stdout, tpsurf(&args).stdout);
}

#[test]
fn generated_job_verifies() {
    let dir = std::env::temp_dir().join(format!("tpsurf-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json");
    let p = path.to_str().unwrap();
    let o = tpsurf(&["generate", "--a", "2", "--b", "3", "--n", "2", "--dimv", "3", "--mu", "1", "--seed", "4", "--out", p]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = tpsurf(&["verify", p]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("strand = 12x12"));
    let again = tpsurf(&["generate", "--a", "2", "--b", "3", "--n", "2", "--dimv", "3", "--mu", "1", "--seed", "4"]);
    assert_eq!(std::fs::read(&path).unwrap(), again.stdout);
}

#[test]
fn selftest_passes() {
    let o = tpsurf(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
