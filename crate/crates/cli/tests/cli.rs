use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use modcat::fusion::FusionRing;
use modcat::modular::ModularData;
use modcat::{Cyclotomic, Phase};
use serde_json::Value;

fn modcat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modcat"))
        .current_dir(dir)
        .env_remove("MODCAT_ZOO_DIR")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn construct(dir: &Path, file: &str, flags: &[&str]) -> Value {
    let mut args = vec!["--json", "construct"];
    args.extend_from_slice(flags);
    args.extend_from_slice(&["-o", file]);
    let out = modcat(dir, &args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    stdout_json(&out)
}

/// TY(ℤ₃) fusion rules with an S matrix that was never balanced against T.
/// FPdim 6 and |E| = 2, so |E|² does not divide FPdim.
fn fake_ty3(path: &Path) {
    let mut entries = Vec::new();
    for g in 0..3 {
        for h in 0..3 {
            entries.push((g, h, (g + h) % 3, 1));
        }
        entries.push((g, 3, 3, 1));
        entries.push((3, g, 3, 1));
        entries.push((3, 3, g, 1));
    }
    let labels = ["0", "1", "2", "m"].map(String::from).to_vec();
    let ring = FusionRing::new(labels, vec![0, 2, 1, 3], &entries).unwrap();
    let sqrt3 = Cyclotomic::root_of_unity(12, 1).unwrap() + Cyclotomic::root_of_unity(12, 11).unwrap();
    let s: Vec<Vec<Cyclotomic>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| match (i, j) {
                    (3, 3) => Cyclotomic::zero(),
                    (3, _) | (_, 3) => sqrt3.clone(),
                    _ => Cyclotomic::root_of_unity(3, (i * j) as i64).unwrap(),
                })
                .collect()
        })
        .collect();
    let m = ModularData::new_unchecked(ring, s, vec![Phase::ONE; 4]).unwrap();
    assert!(m.validate_modular().is_err());
    std::fs::write(path, serde_json::to_string_pretty(&m).unwrap()).unwrap();
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn construct_examples() {
    let dir = tmp();
    let d = dir.path();
    let ising = construct(d, "ising.json", &["--family", "ising", "--twist", "1"]);
    assert_eq!((ising["rank"].as_u64(), ising["fpdim"].as_u64()), (Some(3), Some(4)));
    assert_eq!(ising["nondegenerate"], true);

    let sv = construct(d, "sv.json", &["--family", "metric-group", "--group", "Z2", "--form-value", "-1"]);
    assert_eq!(sv["nondegenerate"], false);
    assert_eq!(sv["svect"], true);

    let p = construct(d, "p.json", &["--family", "product", "--inputs", "ising.json", "sv.json"]);
    assert_eq!((p["rank"].as_u64(), p["fpdim"].as_u64()), (Some(6), Some(8)));

    let dd = construct(
        d,
        "dd.json",
        &["--family", "twisted-double", "--group", "Z3xZ3", "--cocycle", "I1:1,I2:0,II:2"],
    );
    assert_eq!((dd["rank"].as_u64(), dd["fpdim"].as_u64()), (Some(81), Some(81)));
    assert_eq!(dd["nondegenerate"], true);
}

#[test]
fn construct_without_output_prints_category() {
    let dir = tmp();
    let out = modcat(dir.path(), &["construct", "--family", "metric-group", "--group", "Z5"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["D2"], 5);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank 5"));
}

#[test]
fn construct_usage_errors() {
    let dir = tmp();
    let d = dir.path();
    for args in [
        &["construct", "--family", "ising"][..],
        &["construct", "--family", "ising", "--twist", "1", "--group", "Z3"],
        &["construct", "--family", "metric-group", "--group", "Z3x"],
        &["construct", "--family", "metric-group", "--group", "Z2", "--form", "residue", "--form-value", "i"],
        &["construct", "--family", "twisted-double", "--group", "Z4", "--cocycle", "I:x"],
        &["construct", "--family", "nonsense"],
    ] {
        assert_eq!(code(&modcat(d, args)), 2, "{args:?}");
    }
    let out = modcat(d, &["--json", "construct", "--family", "ising", "--twist", "2"]);
    assert_eq!(code(&out), 1);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["message"].as_str().unwrap().contains("odd"));
}

#[test]
fn analyze_examples() {
    let dir = tmp();
    let d = dir.path();
    construct(d, "ising.json", &["--family", "ising", "--twist", "1"]);
    construct(d, "z6.json", &["--family", "metric-group", "--group", "Z6", "--form", "k:1"]);
    construct(d, "sv.json", &["--family", "metric-group", "--group", "Z2", "--form-value", "-1"]);

    let a = stdout_json(&modcat(d, &["--json", "analyze", "ising.json"]));
    assert_eq!(a["dimensional_grading"]["order"], 2);
    assert_eq!(a["nilpotency"]["class"], 2);
    assert_eq!(a["center"]["extent"], "trivial");
    assert_eq!(a["fpdims"]["total"], 4);

    let a = stdout_json(&modcat(d, &["--json", "analyze", "z6.json", "--report", "universal"]));
    assert_eq!(a["universal_grading"]["invariant_factors"], serde_json::json!([6]));
    assert!(a.get("center").is_none());

    let a = stdout_json(&modcat(d, &["--json", "analyze", "sv.json", "--report", "center"]));
    assert_eq!(a["center"]["extent"], "whole");
    assert_eq!(a["center"]["kind"], "super_tannakian");

    let out = modcat(d, &["analyze", "ising.json", "--report", "nilpotency"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("nilpotency.class"));
}

#[test]
fn analyze_rejects_invalid_file() {
    let dir = tmp();
    let d = dir.path();
    std::fs::write(d.join("broken.json"), "{\"labels\": [").unwrap();
    let out = modcat(d, &["analyze", "broken.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    fake_ty3(&d.join("fake.json"));
    assert_ne!(code(&modcat(d, &["analyze", "fake.json"])), 0);
}

#[test]
fn export_round_trip_is_byte_stable() {
    let dir = tmp();
    let d = dir.path();
    construct(d, "a.json", &["--family", "ising", "--twist", "3"]);
    construct(d, "b.json", &["--family", "metric-group", "--group", "Z4", "--form", "k:1"]);
    construct(d, "c.json", &["--family", "product", "--inputs", "a.json", "b.json"]);
    for f in ["a.json", "b.json", "c.json"] {
        assert_eq!(code(&modcat(d, &["export", f, "-o", "x.json"])), 0);
        assert_eq!(code(&modcat(d, &["export", "x.json", "-o", "y.json"])), 0);
        let original = std::fs::read(d.join(f)).unwrap();
        let x = std::fs::read(d.join("x.json")).unwrap();
        let y = std::fs::read(d.join("y.json")).unwrap();
        assert_eq!(x, y, "{f}");
        assert_eq!(original, x, "{f}");
    }
    let out = modcat(d, &["export", "a.json"]);
    assert_eq!(out.stdout, std::fs::read(d.join("a.json")).unwrap());
}

#[test]
fn verify_pointed_double_suite_passes() {
    let dir = tmp();
    let out = modcat(dir.path(), &["--json", "verify", "--suite", "pt-ddqq", "--q5-samples", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let r = stdout_json(&out);
    assert_eq!(r["suite"], "pt-ddqq");
    assert!(r["failures"].as_array().unwrap().is_empty());
    assert!(r["disclaimer"].as_str().unwrap().contains("not a proof"));
    assert!(r.get("wall_time_ms").is_none());
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let dir = tmp();
    assert_eq!(code(&modcat(dir.path(), &["verify", "--suite", "nope"])), 2);
}

#[test]
fn verify_injected_bad_instance_fails_with_witness() {
    let dir = tmp();
    let d = dir.path();
    fake_ty3(&d.join("fake.json"));
    let out = modcat(d, &["--json", "verify", "--suite", "uppbound", "--instance", "fake.json"]);
    assert_eq!(code(&out), 1);
    let r = stdout_json(&out);
    assert_eq!(r["checked"], 1);
    let failures = r["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    let w = &failures[0]["witness"];
    assert_eq!(w["detail"]["E"], 2);
    assert_eq!(w["detail"]["fpdim"], 6);
    let cmd = w["reproduce"].as_str().unwrap();
    assert!(cmd.starts_with("modcat verify --suite uppbound --instance"), "{cmd}");

    // the witness command reproduces the failure
    let args: Vec<String> = cmd
        .split_whitespace()
        .skip(1)
        .map(|a| a.trim_matches('\'').to_string())
        .collect();
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_eq!(code(&modcat(d, &args)), 1);
}

#[test]
fn zoo_build_list_and_verify_from_directory() {
    let dir = tmp();
    let zoo_dir: PathBuf = dir.path().join("zoo");
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_modcat"))
            .current_dir(dir.path())
            .env("MODCAT_ZOO_DIR", &zoo_dir)
            .args(args)
            .output()
            .unwrap()
    };
    let out = run(&["zoo", "build", "--max-rank", "16"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(zoo_dir.join("index.json").exists());

    let list = stdout_json(&run(&["--json", "zoo", "list"]));
    let entries = list.as_array().unwrap();
    assert!(entries.len() > 30);
    assert!(entries.iter().all(|e| e["rank"].as_u64().unwrap() <= 16));
    assert!(entries.iter().any(|e| e["name"] == "ising[1]"));

    let args = ["--json", "verify", "--use-zoo", "--suite", "uppbound,2squarefree,cnil"];
    let first = run(&args);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stdout));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let reports = stdout_json(&first);
    assert_eq!(reports.as_array().unwrap().len(), 3);

    let only = stdout_json(&run(&["--json", "verify", "--use-zoo", "--suite", "uppbound", "--only", "ising[1]"]));
    assert_eq!(only["checked"], 1);
}

#[test]
fn verify_writes_report_file() {
    let dir = tmp();
    let d = dir.path();
    let out = modcat(
        d,
        &["verify", "--suite", "uppbound", "--max-rank", "9", "--timing", "-o", "reports/r.json"],
    );
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_slice(&std::fs::read(d.join("reports/r.json")).unwrap()).unwrap();
    assert_eq!(r["suite"], "uppbound");
    assert!(r["wall_time_ms"].is_u64());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}
