//! Binary-level behavior: exit-code taxonomy, output files and manifests,
//! and bit-identical results across worker counts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qthermo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qthermo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qthermo_test_{}_{name}", std::process::id()));
    std::fs::write(&path, body).expect("temp file");
    path
}

const QUENCH_CONFIG: &str = r#"{
    "protocol": {
        "states": 2,
        "initial_energies": [0.0, 0.0],
        "temperature": 1.0,
        "steps": [{"drive": [0.0, 1.0]}, {"bath": "metropolis"}]
    },
    "n": 5000
}"#;

#[test]
fn ift_runs_and_reports_both_rows() {
    let config = write_temp("ift.json", QUENCH_CONFIG);
    let output = qthermo(&["ift", "--config", config.to_str().unwrap()]);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.starts_with("theorem,mean,std_error,target,n,abs_irrev_fraction,verdict"));
    assert!(stdout.contains("ift_exact"));
    assert!(stdout.contains("ift_sampled"));
}

#[test]
fn validation_errors_exit_2_and_name_every_field() {
    let bad = QUENCH_CONFIG
        .replace("\"temperature\": 1.0", "\"temperature\": -1.0")
        .replace("{\"bath\": \"metropolis\"}", "{\"bath\": \"glauber\"}");
    let config = write_temp("bad.json", &bad);
    let output = qthermo(&["ift", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("temperature"));
    assert!(stderr.contains("glauber"));
}

#[test]
fn malformed_json_exits_2() {
    let config = write_temp("broken.json", "{\"protocol\": {");
    let output = qthermo(&["ift", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8(output.stderr).unwrap().contains("JSON"));
}

#[test]
fn substochastic_matrix_exits_2() {
    let bad = r#"{
        "protocol": {
            "states": 2,
            "initial_energies": [0.0, 1.0],
            "temperature": 1.0,
            "steps": [{"bath_matrix": [[0.4, 0.5], [0.5, 0.5]]}]
        }
    }"#;
    let config = write_temp("substochastic.json", bad);
    let output = qthermo(&["ift", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8(output.stderr)
        .unwrap()
        .contains("column 0 sums to 0.9"));
}

#[test]
fn capacity_overflow_exits_4_with_row_count() {
    // 2 states with 30 bath steps: 2^31 trajectories, over the cap.
    let steps: Vec<String> = (0..30).map(|_| "{\"bath\": \"metropolis\"}".to_string()).collect();
    let body = format!(
        r#"{{
            "protocol": {{
                "states": 2,
                "initial_energies": [0.0, 1.0],
                "temperature": 1.0,
                "steps": [{}]
            }},
            "n": 500
        }}"#,
        steps.join(",")
    );
    let config = write_temp("huge.json", &body);
    let output = qthermo(&["ift", "--exact", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(4));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("2147483648"), "stderr: {stderr}");

    // Without --exact the sampled estimator still runs.
    let output = qthermo(&["ift", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn results_are_byte_identical_across_workers_and_reruns() {
    let config = write_temp("det.json", QUENCH_CONFIG);
    let out_a = std::env::temp_dir().join(format!("qthermo_det_a_{}.csv", std::process::id()));
    let out_b = std::env::temp_dir().join(format!("qthermo_det_b_{}.csv", std::process::id()));

    let run = |out: &PathBuf, workers: &str| {
        let output = qthermo(&[
            "ift",
            "--config",
            config.to_str().unwrap(),
            "--seed",
            "42",
            "--workers",
            workers,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success());
    };
    run(&out_a, "1");
    run(&out_b, "4");
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "worker count changed the result bytes");

    // Manifests exist and agree on everything except wall-clock fields.
    let manifest = |path: &PathBuf| -> serde_json::Value {
        let mut m = path.as_os_str().to_owned();
        m.push(".manifest.json");
        serde_json::from_str(&std::fs::read_to_string(PathBuf::from(m)).unwrap()).unwrap()
    };
    let ma = manifest(&out_a);
    let mb = manifest(&out_b);
    assert_eq!(ma["config_sha256"], mb["config_sha256"]);
    assert_eq!(ma["seed"], mb["seed"]);
    assert_eq!(ma["tool_version"], mb["tool_version"]);
    assert_eq!(ma["summary"], mb["summary"]);
    assert_eq!(ma["workers"], serde_json::json!(1));
    assert_eq!(mb["workers"], serde_json::json!(4));
}

#[test]
fn workers_env_var_is_honored_and_harmless() {
    let config = write_temp("env.json", QUENCH_CONFIG);
    let flagged = qthermo(&["ift", "--config", config.to_str().unwrap(), "--workers", "1"]);
    let from_env = Command::new(env!("CARGO_BIN_EXE_qthermo"))
        .args(["ift", "--config", config.to_str().unwrap()])
        .env("QTHERMO_WORKERS", "3")
        .output()
        .expect("binary runs");
    assert!(flagged.status.success());
    assert!(from_env.status.success());
    assert_eq!(flagged.stdout, from_env.stdout);
}

#[test]
fn engine_and_sweep_run() {
    let output = qthermo(&[
        "engine",
        "--omega0",
        "1.0",
        "--omega-rabi",
        "1.0",
        "--tau",
        "0.5",
        "--temp",
        "0.1",
        "--cycles",
        "2000",
    ]);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("mean_work"));

    let output = qthermo(&[
        "zeno-sweep",
        "--omega0",
        "1.0",
        "--omega-rabi",
        "1.0",
        "--temp",
        "0.1",
        "--points",
        "5",
    ]);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 6);
    assert!(stdout.starts_with("omega_tau,p_minus,W,Qq,WL,eta,power,w_closed_form"));
}

#[test]
fn engine_rejects_bad_pulse_angle() {
    let output = qthermo(&[
        "engine",
        "--omega0",
        "1.0",
        "--omega-rabi",
        "1.0",
        "--tau",
        "4.0",
        "--temp",
        "0.1",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn gate_cost_emits_single_row() {
    let output = qthermo(&[
        "gate-cost",
        "--nbar",
        "100",
        "--theta",
        "1.5707963267948966",
        "--freq-ghz",
        "6.0",
    ]);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.starts_with("nbar,fidelity,energy_J,ratio_to_landauer_300K"));
    assert_eq!(stdout.lines().count(), 2);
}

#[test]
fn demon_and_gift_run_from_config() {
    let config = write_temp(
        "demon.json",
        r#"{"error_rate": 0.1, "input_bias": 0.5, "feedback": "reset", "temperature": 1.0}"#,
    );
    let output = qthermo(&["demon", "--config", config.to_str().unwrap()]);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.starts_with("dS_bits,dI_bits,Si_nats,ift_mean,eta"));

    let output = qthermo(&["gift", "--config", config.to_str().unwrap()]);
    assert!(output.status.success());
    assert!(String::from_utf8(output.stdout).unwrap().contains("gift_exact"));
}

#[test]
fn quantum_trajectories_sample_and_enumerate() {
    let config = write_temp(
        "quantum.json",
        r#"{
            "omega0": 1.0,
            "segments": [
                {"rabi": {"omega": 1.0, "t": 1.5707963267948966}},
                {"measure": "z"},
                {"rabi": {"omega": 1.0, "t": 1.5707963267948966}},
                {"measure": "z"}
            ]
        }"#,
    );
    let output = qthermo(&["quantum", "--config", config.to_str().unwrap(), "--seed", "3"]);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("total"));

    let output = qthermo(&[
        "quantum",
        "--config",
        config.to_str().unwrap(),
        "--enumerate",
    ]);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    // 4 branches plus the header.
    assert_eq!(stdout.lines().count(), 5);
}

#[test]
fn json_format_is_available() {
    let config = write_temp("json_fmt.json", QUENCH_CONFIG);
    let output = qthermo(&[
        "ift",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("valid JSON output");
    assert_eq!(value["table"], "ift");
    assert!(value["rows"].as_array().unwrap().len() >= 2);
}

/// The full verify command, twice, with different worker counts: the
/// determinism acceptance criterion at the binary level.
#[test]
fn verify_is_byte_identical_across_worker_counts() {
    let out_a = std::env::temp_dir().join(format!("qthermo_verify_a_{}.csv", std::process::id()));
    let out_b = std::env::temp_dir().join(format!("qthermo_verify_b_{}.csv", std::process::id()));
    let run = |out: &PathBuf, workers: &str| {
        let output = qthermo(&[
            "verify",
            "--seed",
            "0",
            "--workers",
            workers,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(output.status.code(), Some(0), "verify must pass");
    };
    run(&out_a, "1");
    run(&out_b, "3");
    let a = std::fs::read_to_string(&out_a).unwrap();
    let b = std::fs::read_to_string(&out_b).unwrap();
    assert_eq!(a, b, "verify output depends on the worker count");
    assert!(a.contains("PASS"));
    assert!(!a.contains("FAIL"));
}
