use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;
use std::process::{Command, Output};

use qcat::canonical::{u_s, CanonicalParams};
use qcat::io::{MatrixFile, StateFile};
use qcat::tensor::{kron, CMatrix, C64};
use serde_json::Value;

fn qcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcat"))
        .args(args)
        .env_remove("QCAT_SEED")
        .output()
        .expect("qcat runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn matrix_file(dir: &tempfile::TempDir, name: &str, rows: &[[f64; 4]; 4]) -> PathBuf {
    let m = CMatrix::from_fn(4, 4, |i, j| C64::new(rows[i][j], 0.0));
    write(dir, name, &serde_json::to_string(&MatrixFile::from_matrix(&m)).unwrap())
}

fn unitary_field(v: &Value, key: &str) -> CMatrix {
    let f: MatrixFile = serde_json::from_value(v[key].clone()).unwrap();
    f.to_matrix().unwrap()
}

const CNOT: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0, 0.0],
];

#[test]
fn decompose_cnot_reassembles() {
    let dir = tempfile::tempdir().unwrap();
    let path = matrix_file(&dir, "cnot.json", &CNOT);
    let out = qcat(&["decompose", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let got = [
        v["c1"].as_f64().unwrap(),
        v["c2"].as_f64().unwrap(),
        v["c3"].as_f64().unwrap(),
    ];
    for (g, w) in got.iter().zip([FRAC_PI_4, 0.0, 0.0]) {
        assert!((g - w).abs() < 1e-9, "{got:?}");
    }
    let core = u_s(&CanonicalParams::new(got[0], got[1], got[2]));
    let left = kron(&unitary_field(&v, "u"), &unitary_field(&v, "v"));
    let right = kron(&unitary_field(&v, "u_tilde"), &unitary_field(&v, "v_tilde"));
    let phase = C64::from_polar(1.0, v["global_phase"].as_f64().unwrap());
    let rebuilt = left * core.matrix() * right * phase;
    let want = CMatrix::from_fn(4, 4, |i, j| C64::new(CNOT[i][j], 0.0));
    assert!((rebuilt - want).norm() < 1e-9);
}

#[test]
fn decompose_identity() {
    let dir = tempfile::tempdir().unwrap();
    let mut id = [[0.0; 4]; 4];
    for (k, row) in id.iter_mut().enumerate() {
        row[k] = 1.0;
    }
    let path = matrix_file(&dir, "id.json", &id);
    let out = qcat(&["decompose", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for k in ["c1", "c2", "c3"] {
        assert!(v[k].as_f64().unwrap().abs() < 1e-12);
    }
    assert!(v["residual"].as_f64().unwrap() < 1e-14);
}

#[test]
fn decompose_error_paths() {
    let dir = tempfile::tempdir().unwrap();
    let mut bad = CNOT;
    bad[0][1] = 1.0;
    let path = matrix_file(&dir, "bad.json", &bad);
    let out = qcat(&["decompose", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not unitary"));

    let path = write(&dir, "junk.json", "{\"dim\": 4, \"entries\": ");
    assert_eq!(
        qcat(&["decompose", "--in", path.to_str().unwrap()]).status.code(),
        Some(1)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        qcat(&["decompose", "--in", missing.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn catalysis_report() {
    let args = [
        "catalysis",
        "--c1",
        "0.3",
        "--c2",
        "0.2",
        "--c3",
        "0.1",
        "--trials",
        "100",
        "--seed",
        "7",
    ];
    let a = qcat(&args);
    assert_eq!(a.status.code(), Some(0));
    let v = json(&a);
    assert!(v["max_state_residual"].as_f64().unwrap() <= 1e-12);
    assert_eq!(v["seed"], 7);
    assert_eq!(a.stdout, qcat(&args).stdout);

    let z = qcat(&["catalysis", "--c1", "0", "--c2", "0", "--c3", "0", "--trials", "5"]);
    assert_eq!(json(&z)["max_state_residual"].as_f64().unwrap(), 0.0);

    let neg = qcat(&[
        "catalysis",
        "--c1",
        "0.3",
        "--c2",
        "0.2",
        "--c3",
        "-0.1",
        "--trials",
        "5",
    ]);
    assert_eq!(neg.status.code(), Some(0));
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcat"))
        .args([
            "catalysis",
            "--c1",
            "0.3",
            "--c2",
            "0.2",
            "--c3",
            "0.1",
            "--trials",
            "3",
        ])
        .env("QCAT_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 42);
    assert_eq!(
        json(&qcat(&[
            "catalysis",
            "--c1",
            "0.3",
            "--c2",
            "0.2",
            "--c3",
            "0.1",
            "--trials",
            "3"
        ]))["seed"],
        0
    );
}

#[test]
fn classify_verdicts() {
    let kind = |s: &str, t: &str| {
        let out = qcat(&["classify", "--source", s, "--target", t]);
        assert_eq!(out.status.code(), Some(0));
        json(&out)
    };
    assert_eq!(kind("0.5,0,0", "0.3,0.2,0")["kind"], "LOCC_SIMULABLE");
    assert_eq!(kind("0.3,0.2,0", "0.5,0,0")["kind"], "CATALYTIC_SIMULABLE");
    let v = kind("0.3,0.2,0.1", "0.6,0,0");
    assert_eq!(v["kind"], "FORBIDDEN");
    assert!(v["witness"]["c4_feasibility"]["interval"].is_null());
    assert!(!v["notes"].as_array().unwrap().is_empty());
    assert_eq!(kind("0.3,0.2,0.1", "0.3,0.2,-0.1")["kind"], "FORBIDDEN");
}

#[test]
fn classify_rejects_unreduced_input() {
    let out = qcat(&["classify", "--source", "0.2,0.3,0", "--target", "0.5,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reduce"));
    let out = qcat(&["classify", "--source", "0.2,0.3", "--target", "0.5,0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn nogo_respects_bound() {
    let out = qcat(&["nogo", "--c1", "0.3", "--c2", "0.2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["min_over_xy_of_max_overlap"].as_f64().unwrap() >= 0.5f64.cos().powi(2) - 1e-9);
    assert_eq!(v["samples"], 2000);
    assert_eq!(qcat(&["nogo", "--c1", "0.3", "--c2", "0.0"]).status.code(), Some(1));
}

#[test]
fn monotone_of_bell_state() {
    let dir = tempfile::tempdir().unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let file = StateFile {
        register: vec!["A".into(), "B".into()],
        amplitudes: vec![[0.0, 0.0], [s, 0.0], [s, 0.0], [0.0, 0.0]],
    };
    let path = write(&dir, "b00.json", &serde_json::to_string(&file).unwrap());
    let out = qcat(&["monotone", "--state", path.to_str().unwrap(), "--cut", "A|B"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["max_schmidt_prob"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let out = qcat(&["monotone", "--state", path.to_str().unwrap(), "--cut", "A|C"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_flags_exit_one() {
    assert_eq!(
        qcat(&["catalysis", "--c1", "x", "--c2", "0", "--c3", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(qcat(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qcat(&[]).status.code(), Some(1));
    assert_eq!(qcat(&["--help"]).status.code(), Some(0));
}
