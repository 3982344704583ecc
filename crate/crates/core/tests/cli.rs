use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pdcs::io::{read_decomposition, RunManifest};

fn pdcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdcs"))
        .args(args)
        .env_remove("PDCS_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn subsets_count_and_listing() {
    let out = pdcs(&["subsets", "--qubits", "3", "--count-only"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "135");
    let out = pdcs(&["subsets", "--qubits", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 15);
    assert!(text.lines().all(|l| l.split(',').count() == 3));
    assert_eq!(code(&pdcs(&["subsets", "--qubits", "6"])), 2);
}

#[test]
fn decompose_cnot_gives_one_rotor() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("d.json");
    let out = pdcs(&[
        "decompose",
        "--target",
        "cnot",
        "--seed",
        "7",
        "--out",
        path_str(&out_path),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (d, file) = read_decomposition(&out_path).unwrap();
    assert_eq!(d.rotor_count(), 1);
    assert!(file.fidelity >= 0.9999);
    let manifest = file.manifest.unwrap();
    assert_eq!(manifest.command, "decompose");
    assert_eq!(manifest.seed, Some(7));
    assert_eq!(manifest.flags["target"], "cnot");
    assert_eq!(manifest.outputs, vec![out_path.display().to_string()]);
}

#[test]
fn validation_failures_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"dim": 2, "re": [[1, 1], [0, 1]], "im": [[0, 0], [0, 0]]}"#,
    )
    .unwrap();
    assert_eq!(code(&pdcs(&["decompose", "--target", path_str(&bad)])), 2);
    assert_eq!(
        code(&pdcs(&["decompose", "--target", "cnot", "--frobnicate"])),
        2
    );
    assert_eq!(code(&pdcs(&["decompose", "--target", "nosuchgate"])), 2);
    assert_eq!(
        code(&pdcs(&["decompose", "--target", "h", "--fidelity", "1.5"])),
        2
    );
    assert_eq!(
        code(&pdcs(&[
            "decompose",
            "--target",
            "h",
            "--subset-mode",
            "random"
        ])),
        2
    );
    assert_eq!(code(&pdcs(&["simulate", "--step-mode", "trotter1:1"])), 2);
    assert_eq!(code(&pdcs(&["compare-trotter", "--m", "5..2"])), 2);
    let out = pdcs(&[
        "decompose",
        "--target",
        path_str(&dir.path().join("missing.json")),
    ]);
    assert_eq!(
        code(&out),
        2,
        "a missing file is read as an unknown gate name"
    );
}

#[test]
fn budget_exhaustion_is_strict_only() {
    let lax = pdcs(&["decompose", "--target", "h", "--max-rotors", "1"]);
    assert_eq!(code(&lax), 0);
    assert!(String::from_utf8_lossy(&lax.stderr).contains("budget exhausted"));
    let strict = pdcs(&[
        "decompose",
        "--target",
        "h",
        "--max-rotors",
        "1",
        "--strict",
    ]);
    assert_eq!(code(&strict), 3);
    let circuit = pdcs(&[
        "decompose",
        "--circuit",
        "qft2",
        "--max-rotors",
        "1",
        "--strict",
    ]);
    assert_eq!(code(&circuit), 3);
}

#[test]
fn matrix_file_target_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("x.json");
    fs::write(
        &target,
        r#"{"dim": 2, "re": [[0, 1], [1, 0]], "im": [[0, 0], [0, 0]]}"#,
    )
    .unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"fidelity_threshold": 0.99, "seed": 11}"#).unwrap();
    let out_path = dir.path().join("d.json");
    let out = Command::new(env!("CARGO_BIN_EXE_pdcs"))
        .args([
            "decompose",
            "--target",
            path_str(&target),
            "--out",
            path_str(&out_path),
        ])
        .env("PDCS_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (d, file) = read_decomposition(&out_path).unwrap();
    assert_eq!(d.rotor_count(), 1);
    let manifest = file.manifest.unwrap();
    assert_eq!(manifest.seed, Some(11));
    assert_eq!(manifest.input_digests.len(), 1);
    assert!(manifest.flags["config"].contains("0.99"));
}

#[test]
fn circuit_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("c.json");
    fs::write(
        &circuit,
        r#"[{"gate": "H", "qubits": [1]}, {"gate": "CNOT", "qubits": [1, 2]}]"#,
    )
    .unwrap();
    let out_path = dir.path().join("d.json");
    let out = pdcs(&[
        "decompose",
        "--circuit",
        path_str(&circuit),
        "--out",
        path_str(&out_path),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (_, file) = read_decomposition(&out_path).unwrap();
    assert_eq!(file.n, 2);
    assert!(file.fidelity >= 0.9999);
    assert_eq!(file.blocks.unwrap().len(), 1);
}

#[test]
fn prepare_presets_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("p.json");
    let out = pdcs(&["prepare", "--target", "ghz", "--out", path_str(&out_path)]);
    assert_eq!(code(&out), 0);
    let (d, _) = read_decomposition(&out_path).unwrap();
    assert_eq!(d.rotor_count(), 1);

    let target = dir.path().join("plus.json");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    fs::write(
        &target,
        format!(r#"{{"kind": "statevector", "dim": 2, "re": [{h}, {h}], "im": [0, 0]}}"#),
    )
    .unwrap();
    let out = pdcs(&[
        "prepare",
        "--target",
        path_str(&target),
        "--out",
        path_str(&out_path),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&pdcs(&["prepare", "--target", "nonsense"])), 2);
    assert_eq!(
        code(&pdcs(&["prepare", "--initial", "zero2", "--target", "ghz"])),
        2
    );
}

#[test]
fn simulate_writes_series_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    let out = pdcs(&[
        "simulate",
        "--preset",
        "three-body",
        "--steps",
        "5",
        "--step-mode",
        "pdcs",
        "--out",
        path_str(&csv),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,t_seconds,m_x"));
    assert_eq!(lines.next(), Some("0,0,1"));
    assert_eq!(text.lines().count(), 7);
    let manifest: RunManifest = serde_json::from_str(
        &fs::read_to_string(dir.path().join("curve.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest.command, "simulate");
    assert_eq!(manifest.flags["step_mode"], "pdcs");
}

#[test]
fn compare_trotter_table() {
    let out = pdcs(&["compare-trotter", "--m", "1,2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(text.lines().next(), Some("m,f_trotter1,f_trotter2,f_pdcs"));
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert!(r[3] >= r[2] - 1e-9 && r[2] >= r[1] - 1e-9);
    }

    let dir = tempfile::tempdir().unwrap();
    let ham = dir.path().join("h.json");
    fs::write(
        &ham,
        r#"{"units": "hz", "terms": [{"pauli": "XI", "coefficient": 1}, {"pauli": "ZZ", "coefficient": 2}]}"#,
    )
    .unwrap();
    let out = pdcs(&[
        "compare-trotter",
        "--hamiltonian",
        path_str(&ham),
        "--t",
        "0.3",
        "--m",
        "1..3",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 4);
}
