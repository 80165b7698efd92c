use std::process::Command;

use beatty_cli::config::{parse_config, ConfigError, Task};

fn beatty(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_beatty")).args(args).output().expect("binary runs")
}

fn usage_flag(args: &[&str]) -> &'static str {
    let argv = std::iter::once("beatty").chain(args.iter().copied());
    match parse_config(argv) {
        Err(ConfigError::Usage(e)) => e.flag,
        other => panic!("expected a usage error, got {other:?}"),
    }
}

#[test]
fn sweep_config_parses() {
    let argv = "beatty count sweep --alpha sqrt:2 --beta 0 --q 2 --a 1 --grid 1e4,1e5".split(' ');
    let cfg = parse_config(argv).unwrap();
    match cfg.task {
        Task::Sweep { spec, grid, .. } => {
            assert_eq!(grid, vec![10_000, 100_000]);
            assert_eq!((spec.class.q(), spec.class.a()), (2, 1));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn usage_errors_name_the_flag() {
    assert_eq!(usage_flag(&["count", "sweep", "--alpha", "sqrt:2", "--q", "4", "--a", "2"]), "a");
    assert_eq!(usage_flag(&["cfrac", "--alpha", "sqrt:4"]), "alpha");
    assert_eq!(usage_flag(&["cfrac", "--alpha", "0.5"]), "alpha");
    assert_eq!(usage_flag(&["cfrac", "--alpha", "dec:1.41x@64"]), "alpha");
    assert_eq!(usage_flag(&["count", "sweep", "--alpha", "sqrt:2", "--grid", "1e5,1e4"]), "grid");
    assert_eq!(usage_flag(&["count", "sweep", "--alpha", "sqrt:2", "--grid", "1e4,1e4"]), "grid");
    assert_eq!(usage_flag(&["count", "sweep", "--alpha", "sqrt:2", "--grid", "1e4,1e13"]), "grid");
    assert_eq!(usage_flag(&["sieve", "psi", "--L", "1e11"]), "L");
    assert_eq!(usage_flag(&["psi-delta", "inspect", "--gamma", "0.3", "--delta", "0.2"]), "delta");
    assert_eq!(usage_flag(&["--precision", "2", "cfrac", "--alpha", "sqrt:2"]), "precision");
}

#[test]
fn single_value_is_two_csv_lines() {
    let out = beatty(&["sieve", "pi", "--L", "100"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "L,q,a,value\n100,1,0,25\n");
}

#[test]
fn progression_psi_matches_trial_division() {
    let oracle: f64 = (2..=1000u64)
        .filter(|n| n % 4 == 3)
        .filter_map(|n| {
            let p = (2..=n).find(|p| n % p == 0).unwrap();
            let mut r = n;
            while r % p == 0 {
                r /= p;
            }
            (r == 1).then(|| (p as f64).ln())
        })
        .sum();
    let out = beatty(&["sieve", "psi", "--L", "1000", "--q", "4", "--a", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let value: f64 = text.lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!((value - oracle).abs() <= 1e-9 * oracle, "{value} vs {oracle}");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        let args = ["count", "sweep", "--alpha", "sqrt:3", "--beta", "0.25", "--q", "3", "--a", "2", "--grid", "1e3,1e4,1e5"];
        let out = beatty(&[&args[..], &["--out", p]].concat());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let csv = std::fs::read(&path).unwrap();
        let json = std::fs::read(path.with_extension("json")).unwrap();
        (csv, json)
    };
    let (a, b) = (run("first.csv"), run("second.csv"));
    assert_eq!(a, b);
    let csv = String::from_utf8(a.0).unwrap();
    assert!(!csv.contains('\r'));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "N,lhs,main,abs_err,rel_err");
    let ns: Vec<u64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns, vec![1_000, 10_000, 100_000]);
    let json: serde_json::Value = serde_json::from_slice(&a.1).unwrap();
    assert_eq!(json["settings"]["tol"], 0.03);
    assert_eq!(json["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let csv = beatty(&["discrepancy", "--gamma", "sqrt:2", "--M", "10,100"]).stdout;
    let json = beatty(&["discrepancy", "--gamma", "sqrt:2", "--M", "10,100", "--format", "json"]).stdout;
    let json: serde_json::Value = serde_json::from_slice(&json).unwrap();
    let csv = String::from_utf8(csv).unwrap();
    for (line, row) in csv.lines().skip(1).zip(json["rows"].as_array().unwrap()) {
        let d: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(Some(d), row[1].as_f64());
    }
}

#[test]
fn exit_codes() {
    let base = ["count", "sweep", "--alpha", "sqrt:2", "--q", "2", "--a", "1", "--grid", "1e4,1e5,1e6"];
    assert_eq!(beatty(&base).status.code(), Some(0));
    assert_eq!(beatty(&[&base[..], &["--tol", "1e-6"]].concat()).status.code(), Some(2));
    assert_eq!(beatty(&["count", "sweep", "--alpha", "sqrt:4"]).status.code(), Some(1));
    assert_eq!(beatty(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(beatty(&["--help"]).status.code(), Some(0));
    let identity = ["expsum", "identity-check", "--gamma", "sqrt:2", "--q", "5", "--a", "2", "--M", "20000"];
    assert_eq!(beatty(&identity).status.code(), Some(0));
}

#[test]
fn membership_reports_indices() {
    let out = beatty(&["beatty", "member", "--alpha", "sqrt:2", "--m", "4,3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "m,member,n\n4,yes,3\n3,no,\n");
}
