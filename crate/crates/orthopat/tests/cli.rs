//! End-to-end tests of the `orthopat` binary: exit codes, JSON evidence,
//! determinism under a fixed seed, and the config/env plumbing.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_orthopat")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("ORTHOPAT_SEED")
        .env_remove("ORTHOPAT_OUT")
        .output()
        .expect("binary runs")
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orthopat-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn construct(dir: &Path, name: &str) -> PathBuf {
    let out = run_in(dir, &["construct", name]);
    assert!(out.status.success(), "construct {name} failed");
    write(dir, &format!("{name}.json"), &String::from_utf8(out.stdout).unwrap())
}

#[test]
fn verify_cert_accepts_fixture_certificate() {
    let dir = tmpdir("verify");
    // build a certificate file from the constructed matrix
    let matrix = construct(&dir, "certificate-5x6-2");
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&matrix).unwrap()).unwrap();
    v["claim"] = serde_json::json!("allows_row_orthogonality");
    let cert = write(&dir, "cert.json", &serde_json::to_string(&v).unwrap());

    let out = run_in(&dir, &["verify-cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["report"]["verdict"], "accept");
    assert_eq!(report["report"]["delta"], "3/73");

    // a broken certificate is rejected with exit 2
    let mut bad = v.clone();
    bad["data"][0][0] = serde_json::json!(-80000);
    let badfile = write(&dir, "bad.json", &serde_json::to_string(&bad).unwrap());
    let out = run_in(&dir, &["verify-cert", badfile.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sipp_exit_codes() {
    let dir = tmpdir("sipp");
    let conf = construct(&dir, "conference-6");
    // conference matrix realization as matrix JSON
    let pat: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&conf).unwrap()).unwrap();
    let entries = pat["entries"].as_str().unwrap();
    let n = pat["cols"].as_u64().unwrap() as usize;
    let data: Vec<Vec<i64>> = entries
        .as_bytes()
        .chunks(n)
        .map(|row| {
            row.iter()
                .map(|c| match c {
                    b'+' => 1,
                    b'-' => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let matrix = write(
        &dir,
        "conference-matrix.json",
        &serde_json::json!({"rows": 6, "cols": 6, "data": data}).to_string(),
    );
    let out = run_in(&dir, &["sipp", matrix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "conference realization lacks the SIPP");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["has_sipp"], false);
    assert!(!v["witness"].is_null(), "witness must be embedded");

    let hess = construct(&dir, "hessenberg-4");
    let out = run_in(&dir, &["sipp", hess.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_exit_codes_and_evidence() {
    let dir = tmpdir("check");
    // PPO failure: exit 2, evidence embedded
    let forbidden = write(&dir, "dup-rows.txt", "+-+\n+-+\n+++\n");
    let out = run_in(&dir, &["check", forbidden.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "forbidden");
    assert_eq!(v["evidence"]["kind"], "ppo-failure");

    // cover-based allows: exit 0 (the incidence pattern of K_3)
    let sk3 = write(&dir, "sk3.txt", "++0--0\n+0++0-\n0++0++\n");
    let out = run_in(&dir, &["check", sk3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "allows");
    assert_eq!(v["evidence"]["kind"], "four-cycle-cover");

    // usage error: exit 1
    let out = run_in(&dir, &["check", "no-such-file.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_on_the_open_pattern_is_sound() {
    // the bundled 6x8 pattern has no known obstruction: exit must be 0
    // (allows, evidence embedded) or 3 (unknown), never 2
    let dir = tmpdir("open");
    construct(&dir, "open-6x8");
    // construct emits pattern JSON; check accepts it directly
    let file = dir.join("open-6x8.json");
    let out = run_in(&dir, &["check", file.to_str().unwrap(), "--seed", "1"]);
    let code = out.status.code().unwrap();
    assert!(code == 0 || code == 3, "unexpected exit {code}");
    if code == 0 {
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["status"], "allows");
        assert_eq!(v["evidence"]["kind"], "certificate");
        assert_eq!(v["evidence"]["report"]["verdict"], "accept");
    }
}

#[test]
fn identical_seed_means_identical_output() {
    let dir = tmpdir("seed");
    let pattern = write(&dir, "p.txt", "+-++\n++-+\n+++-\n++++\n");
    let a = run_in(&dir, &["check", pattern.to_str().unwrap(), "--seed", "42"]);
    let b = run_in(&dir, &["check", pattern.to_str().unwrap(), "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same seed must give byte-identical output");

    // env var override: same seed through the environment
    let c = Command::new(bin())
        .args(["check", pattern.to_str().unwrap()])
        .current_dir(&dir)
        .env("ORTHOPAT_SEED", "42")
        .env_remove("ORTHOPAT_OUT")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout, "ORTHOPAT_SEED must act like --seed");
}

#[test]
fn simulate_emits_csv_sweep() {
    let dir = tmpdir("simulate");
    let out = run_in(
        &dir,
        &[
            "simulate",
            "--m",
            "3",
            "--n",
            "14,20",
            "--p",
            "1/2",
            "--r",
            "3",
            "--trials",
            "60",
            "--seed",
            "9",
            "--format",
            "csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,p,r,empirical,lo,hi,bound"));
    assert_eq!(lines.clone().count(), 2, "one row per n value");
    assert!(lines.all(|l| l.starts_with("3,")));
}

#[test]
fn classify_m3_reports_single_class() {
    let dir = tmpdir("classify");
    let out = run_in(&dir, &["classify", "--m", "3", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["incomplete"], false);
    let minimal: Vec<_> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["minimal"] == true)
        .collect();
    assert_eq!(minimal.len(), 1);
}

#[test]
fn construct_writes_artifacts_and_lists() {
    let dir = tmpdir("construct");
    let outdir = dir.join("artifacts");
    let out = Command::new(bin())
        .args(["construct", "hessenberg-3", "--out", outdir.to_str().unwrap()])
        .current_dir(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(outdir.join("hessenberg-3.json").exists());
    let out = run_in(&dir, &["construct", "list"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("conference-6"));
    let out = run_in(&dir, &["construct", "no-such-fixture"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn external_json_schemas_are_stable() {
    let dir = tmpdir("schema");
    // pattern JSON: {"rows","cols","entries"} with a row-major +-0 string
    let pat = construct(&dir, "minimal-2x2");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&pat).unwrap()).unwrap();
    assert_eq!(v["rows"], 2);
    assert_eq!(v["cols"], 2);
    assert_eq!(v["entries"], "+-++");
    // matrix JSON: {"rows","cols","data"} with bare integers where possible
    let hess = construct(&dir, "hessenberg-2");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&hess).unwrap()).unwrap();
    assert_eq!(v["data"], serde_json::json!([[1, -1], [1, 1]]));
    // certificate file: matrix fields plus claim and pattern
    let pattern = write(&dir, "p.txt", "+-
++
");
    let outdir = dir.join("artifacts");
    let out = Command::new(bin())
        .args([
            "find-cert",
            pattern.to_str().unwrap(),
            "--seed",
            "4",
            "--out",
            outdir.to_str().unwrap(),
        ])
        .current_dir(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(outdir.join("certificate.json")).unwrap())
            .unwrap();
    assert_eq!(cert["claim"], "allows_row_orthogonality");
    assert_eq!(cert["pattern"]["entries"], "+-++");
    assert!(cert["data"].is_array());
    // and the emitted file verifies on the spot
    let out = run_in(
        &dir,
        &["verify-cert", outdir.join("certificate.json").to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn config_file_controls_defaults() {
    let dir = tmpdir("config");
    let cfg = write(&dir, "orthopat.conf", "seed=7\noutput_format=text\n");
    let pattern = write(&dir, "p.txt", "+-\n++\n");
    let out = run_in(&dir, &["check", pattern.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("allows row orthogonality"), "text format respected: {text}");
    // bad config is a usage error
    let bad = write(&dir, "bad.conf", "search_scale=0\n");
    let out = run_in(&dir, &["check", pattern.to_str().unwrap(), "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
