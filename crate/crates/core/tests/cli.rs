use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_liouville-lab"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).env_remove("LIOUVILLE_LAB_GOLDEN").output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn correlate_prints_json() {
    let (code, out, _) = run(&["correlate", "--n", "8", "--shifts", "0,1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sum"], -4);
    assert_eq!(v["normalized"], -0.5);
    assert_eq!(v["command"], "correlate");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["correlate", "--n", "8", "--shifts", "1,1"]).0, 2);
    assert_eq!(run(&["nonsense"]).0, 2);
    assert_eq!(run(&["sieve", "--lo", "10", "--hi", "x"]).0, 2);
    assert_eq!(run(&["sieve", "--lo", "10", "--hi", "5"]).0, 2);
    assert_eq!(run(&["correlate", "--n", "8", "--shifts", "0", "--output", "/no/such/dir/x"]).0, 1);
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn sieve_csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sieve.csv");
    let (code, out, _) = run(&["sieve", "--lo", "1", "--hi", "10", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,omega,lambda,mu,mangoldt,prime");
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[4], "4,2,1,0,0.69314718056,0");

    let (_, json, _) = run(&["sieve", "--lo", "1", "--hi", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["prime_count"], 4);
    assert_eq!(v["lambda_sum"], 0);
}

#[test]
fn variance_side_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.csv");
    let (code, out, _) = run(&[
        "variance", "--x", "100000", "--h", "8,64", "--thresholds", "0.25", "--format", "json", "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("x_start,h,count,mean_sq,normalized_variance,max_abs,exceed_0.25\n"));
}

#[test]
fn golden_env_overrides_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["signchanges", "--n", "1000", "--golden-dir", flag_dir.path().to_str().unwrap()])
        .env("LIOUVILLE_LAB_GOLDEN", env_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env_dir.path().join("signchanges.json").exists());
    assert!(!flag_dir.path().join("signchanges.json").exists());
}

#[test]
fn seeded_trials_depend_on_seed_only() {
    let a = run(&["meanvalue", "--random", "100", "--t", "50", "--trials", "2", "--seed", "9"]).1;
    let b = run(&["meanvalue", "--random", "100", "--t", "50", "--trials", "2", "--seed", "9", "--threads", "2"]).1;
    let c = run(&["meanvalue", "--random", "100", "--t", "50", "--trials", "2", "--seed", "10"]).1;
    assert_eq!(a, b);
    assert_ne!(a, c);
}
