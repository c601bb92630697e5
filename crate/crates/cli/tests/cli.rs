use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn powseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powseries"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn values(line: &str) -> Vec<f64> {
    line.trim()
        .split(',')
        .map(|v| v.parse().expect("number"))
        .collect()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("powseries-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn compute_recip_geometric() {
    let out = powseries(&["compute", "recip", "--coeffs", "1,-1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(values(&stdout(&out)), vec![1.0; 5]);
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(
        summary.contains("n=5") && summary.contains("s=1"),
        "{summary}"
    );
}

#[test]
fn compute_sqrt_examples() {
    let out = powseries(&["compute", "sqrt", "--coeffs", "1,2,1", "--n", "4"]);
    assert_eq!(values(&stdout(&out)), vec![1.0, 1.0, 0.0, 0.0]);
    let out = powseries(&["compute", "sqrt", "--coeffs", "1,1", "--n", "4"]);
    assert_eq!(values(&stdout(&out)), vec![1.0, 0.5, -0.125, 0.0625]);
}

#[test]
fn compute_sqrtrem_writes_remainder_file() {
    let path = tmp("rem.txt");
    let out = powseries(&[
        "compute",
        "sqrtrem",
        "--coeffs",
        "1,0,1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let root = std::fs::read_to_string(&path).unwrap();
    let rem = std::fs::read_to_string(path.with_extension("txt.rem")).unwrap();
    let parse = |t: &str| -> Vec<f64> {
        t.lines()
            .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
            .collect()
    };
    assert_eq!(parse(&root), vec![0.0, 1.0]);
    assert_eq!(parse(&rem), vec![1.0]);
}

#[test]
fn compute_from_file_matches_inline() {
    let path = tmp("in.txt");
    std::fs::write(&path, "# 1 + x\n1\n1 0\n").unwrap();
    let out = powseries(&[
        "compute",
        "sqrt",
        "--in",
        path.to_str().unwrap(),
        "--n",
        "4",
    ]);
    assert_eq!(values(&stdout(&out)), vec![1.0, 0.5, -0.125, 0.0625]);
}

#[test]
fn random_compute_is_deterministic() {
    let run = || {
        stdout(&powseries(&[
            "compute", "recip", "--seed", "4", "--n", "64", "--dist", "damped",
        ]))
    };
    assert_eq!(run(), run());
}

#[test]
fn exit_codes() {
    assert_eq!(
        powseries(&["compute", "sqrt", "--coeffs", "2,1", "--n", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        powseries(&["compute", "sqrtrem", "--coeffs", "1,0,0,1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        powseries(&["compute", "recip", "--in", "/nonexistent/file"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(powseries(&["bench", "--op", "div"]).status.code(), Some(1));
    assert_eq!(powseries(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        powseries(&["compute", "sqrt", "--n", "x"]).status.code(),
        Some(2)
    );
}

#[test]
fn bench_json_counts_and_baselines() {
    let out = powseries(&[
        "bench",
        "--op",
        "sqrt,recip",
        "--blocks",
        "4",
        "--block-size",
        "32",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let ops: Vec<&str> = rows.iter().map(|r| r["op"].as_str().unwrap()).collect();
    assert_eq!(ops, ["sqrt", "coupled-newton", "recip", "schonhage"]);

    let sqrt = &rows[0];
    assert_eq!(sqrt["n"], 128);
    assert_eq!(sqrt["forward"]["64"], 7);
    assert_eq!(sqrt["inverse"]["64"], 6);
    let recip = &rows[2];
    assert_eq!(recip["n"], 384);
    assert_eq!(recip["forward"]["64"], 27);
    assert_eq!(recip["inverse"]["64"], 22);
    for r in [sqrt, recip] {
        let (got, want) = (
            r["cost_ratio"].as_f64().unwrap(),
            r["expected_ratio"].as_f64().unwrap(),
        );
        assert!((got - want).abs() <= 0.05 * want);
        assert_eq!(r["rng"], "pcg64");
    }
}

#[test]
fn bench_counts_are_deterministic() {
    let strip = |out: Output| -> Vec<Value> {
        stdout(&out)
            .lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("wall_ns");
                v
            })
            .collect()
    };
    let args = ["bench", "--op", "recip", "--n", "300,700", "--seed", "9"];
    assert_eq!(strip(powseries(&args)), strip(powseries(&args)));
}

#[test]
fn bench_csv_has_header_and_rows() {
    let path = tmp("bench.csv");
    let out = powseries(&[
        "bench",
        "--op",
        "sqrt",
        "--n",
        "100",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("op,n,m,blocks,rng,input,seed,forward"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn selftest_quick_passes() {
    let out = powseries(&["selftest", "--quick"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn selftest_detects_corrupted_transform() {
    let out = powseries(&["selftest", "--quick", "--corrupt-twiddle"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL] fft-roundtrip"));
}
