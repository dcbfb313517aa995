//! End-to-end CLI tests, including the byte-stability acceptance criterion:
//! every command on the bundled example config produces identical output
//! across runs under a pinned seed.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_telegrapher")
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn example_config() -> PathBuf {
    configs_dir().join("example_line.json")
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .env("TELEGRAPH_SEED", "12345")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("telegrapher-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir.join(name)
}

#[test]
fn params_prints_bound_parameters() {
    let output = run(&["params", example_config().to_str().unwrap()]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("validation: pass"));
    assert!(text.contains("kappa_upper"));
    assert!(text.contains("nu_lower"));
}

#[test]
fn params_scalar_cable_thresholds_match_hand_arithmetic() {
    // L = 5e-7 H/m, C = 1e-10 F/m, R = 0.01 ohm/m, G = 1e-9 S/m:
    // rho = -0.01 / 5e-7 = -2e4, gamma = -1e-9 / 1e-10 = -10,
    // alpha = max(rho, gamma) = -10.
    let output = run(&[
        "params",
        configs_dir().join("scalar_cable.json").to_str().unwrap(),
        "--json",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let params = &parsed["bound_params"];
    let rel = |value: f64, reference: f64| (value - reference).abs() / reference.abs();
    assert!(rel(params["rho"].as_f64().unwrap(), -2e4) < 1e-12);
    assert!(rel(params["gamma"].as_f64().unwrap(), -10.0) < 1e-12);
    assert!(rel(params["alpha"].as_f64().unwrap(), -10.0) < 1e-12);
}

#[test]
fn params_lossless_identity_has_zero_loss_parameters() {
    let output = run(&[
        "params",
        configs_dir().join("lossless_identity.json").to_str().unwrap(),
        "--json",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let params = &parsed["bound_params"];
    assert_eq!(params["alpha"].as_f64().unwrap(), 0.0);
    assert_eq!(params["theta"].as_f64().unwrap(), 0.0);
    assert_eq!(params["b"].as_f64().unwrap(), 1.0);
}

#[test]
fn params_rejects_asymmetric_matrix_naming_it() {
    let path = temp_path("asymmetric.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "L": [[1.0, 0.5], [0.0, 1.0]], "C": [[1.0, 0.0], [0.0, 1.0]],
            "R": [[0.0, 0.0], [0.0, 0.0]], "G": [[0.0, 0.0], [0.0, 0.0]],
            "units": "si_per_meter"}"#,
    )
    .unwrap();
    let output = run(&["params", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("L is not symmetric"));
}

#[test]
fn params_rejects_malformed_json_with_location() {
    let path = temp_path("malformed.json");
    std::fs::write(&path, "{\"n\": 2, \"L\": [[1.0,]]").unwrap();
    let output = run(&["params", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("line"));
}

#[test]
fn emit_config_round_trips_bit_identical() {
    let first = run(&["params", example_config().to_str().unwrap(), "--emit-config"]);
    assert!(first.status.success());
    let emitted_path = temp_path("roundtrip.json");
    std::fs::write(&emitted_path, stdout(&first)).unwrap();

    let second = run(&["params", emitted_path.to_str().unwrap(), "--emit-config"]);
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn emit_config_template_without_path() {
    let output = run(&["params", "--emit-config"]);
    assert!(output.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(parsed["units"], "si_per_meter");
}

#[test]
fn eval_chain_at_zero_length_is_identity() {
    let output = run(&[
        "eval",
        example_config().to_str().unwrap(),
        "--s-re",
        "1.0",
        "--s-im",
        "2.0",
        "--d",
        "0.0",
        "--quantity",
        "chain",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("1.0000000000000000e0"));
}

#[test]
fn eval_scalar_lossless_abcd_matches_hyperbolics() {
    let path = temp_path("unit_scalar.json");
    std::fs::write(
        &path,
        r#"{"n": 1, "L": [[1.0]], "C": [[1.0]], "R": [[0.0]], "G": [[0.0]],
            "units": "si_per_meter"}"#,
    )
    .unwrap();
    let output = run(&[
        "eval",
        path.to_str().unwrap(),
        "--s-re",
        "1.0",
        "--d",
        "1.0",
        "--quantity",
        "abcd",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    // cosh 1 = 1.5430806..., sinh 1 = 1.1752011...
    assert!(text.contains("1.5430806348152437e0"));
    assert!(text.contains("1.1752011936438014e0"));
}

#[test]
fn eval_admittance_at_zero_length_is_a_short_circuit() {
    let output = run(&[
        "eval",
        example_config().to_str().unwrap(),
        "--s-re",
        "1.0",
        "--d",
        "0.0",
        "--quantity",
        "admittance",
    ]);
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr(&output).contains("short circuit"));
}

#[test]
fn sweep_lossless_chain_norms_are_unit() {
    let config = temp_path("unit_line.json");
    std::fs::write(
        &config,
        r#"{"n": 1, "L": [[1.0]], "C": [[1.0]], "R": [[0.0]], "G": [[0.0]],
            "units": "si_per_meter"}"#,
    )
    .unwrap();
    let out = temp_path("sweep_unit.csv");
    let output = run(&[
        "sweep",
        config.to_str().unwrap(),
        "--f-start",
        "1e3",
        "--f-stop",
        "1e6",
        "--points",
        "40",
        "--spacing",
        "log",
        "--sigma",
        "0.0",
        "--d",
        "1.0",
        "--quantities",
        "chain",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "f_hz,chain_norm");
    let mut previous_f = 0.0f64;
    let mut rows = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let f: f64 = fields[0].parse().unwrap();
        let norm: f64 = fields[1].parse().unwrap();
        assert!(f > previous_f, "frequencies must increase strictly");
        assert!((norm - 1.0).abs() < 1e-9, "lossless chain norm {norm}");
        previous_f = f;
        rows += 1;
    }
    assert_eq!(rows, 40);
}

#[test]
fn sweep_envelope_dominates_norms() {
    let out = temp_path("sweep_bounds.csv");
    let output = run(&[
        "sweep",
        example_config().to_str().unwrap(),
        "--f-start",
        "1e0",
        "--f-stop",
        "1e5",
        "--points",
        "60",
        "--sigma",
        "0.5",
        "--d",
        "1.5",
        "--quantities",
        "chain,abcd,admittance,impedance,bounds",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "f_hz,chain_norm,abcd_norm,admittance_norm,impedance_norm,envelope"
    );
    for line in lines {
        let fields: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let envelope = fields[5];
        // The envelope bounds the ABCD/chain norms at every row.
        assert!(envelope >= fields[1], "envelope below chain norm: {line}");
        assert!(envelope >= fields[2], "envelope below abcd norm: {line}");
        assert!(fields.iter().all(|v| v.is_finite()));
    }
}

#[test]
fn sweep_full_matrices_emits_entry_columns() {
    let out = temp_path("sweep_full.csv");
    let output = run(&[
        "sweep",
        example_config().to_str().unwrap(),
        "--f-start",
        "1e2",
        "--f-stop",
        "1e3",
        "--points",
        "5",
        "--quantities",
        "chain",
        "--d",
        "1.0",
        "--out",
        out.to_str().unwrap(),
        "--full-matrices",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = std::fs::read_to_string(&out).unwrap();
    let header = text.lines().next().unwrap();
    // 1 (f) + 1 (norm) + 4x4 complex entries = 2 + 32 columns.
    assert_eq!(header.split(',').count(), 34);
    assert!(header.contains("chain_r0c0_re"));
    assert!(header.contains("chain_r3c3_im"));
}

#[test]
fn sweep_log_spacing_rejects_zero_start() {
    let out = temp_path("never_written.csv");
    let output = run(&[
        "sweep",
        example_config().to_str().unwrap(),
        "--f-start",
        "0.0",
        "--f-stop",
        "1e3",
        "--points",
        "10",
        "--quantities",
        "chain",
        "--d",
        "1.0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn sweep_rejects_sigma_left_of_alpha_before_writing() {
    let config = temp_path("lossless_for_sigma.json");
    std::fs::write(
        &config,
        r#"{"n": 1, "L": [[1.0]], "C": [[1.0]], "R": [[0.0]], "G": [[0.0]],
            "units": "si_per_meter"}"#,
    )
    .unwrap();
    let out = temp_path("never_written_2.csv");
    let output = run(&[
        "sweep",
        config.to_str().unwrap(),
        "--f-start",
        "1e0",
        "--f-stop",
        "1e3",
        "--points",
        "10",
        "--sigma",
        "0.0",
        "--d",
        "1.0",
        "--quantities",
        "admittance",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr(&output).contains("alpha"));
    assert!(!out.exists());
}

#[test]
fn verify_default_suite_passes_with_many_checks() {
    let out = temp_path("report.json");
    let output = run(&[
        "verify",
        example_config().to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        output.status.success(),
        "stdout: {}\nstderr: {}",
        stdout(&output),
        stderr(&output)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 12, "only {} checks", checks.len());
    for check in checks {
        assert_eq!(check["status"], "pass", "{check}");
        assert!(check["quote_anchor"].is_string());
        assert!(check["worst_margin"].is_number());
    }
}

#[test]
fn verify_three_conductor_default_suite_passes() {
    let out = temp_path("report3.json");
    let output = run(&[
        "verify",
        configs_dir().join("three_conductor.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report["checks"].as_array().unwrap().len() >= 12);
    assert_eq!(report["failed"], 0);
}

#[test]
fn verify_rejects_unknown_check_id() {
    let suite = temp_path("bad_suite.json");
    std::fs::write(&suite, r#"[{"check_id": "definitely_not_a_check"}]"#).unwrap();
    let out = temp_path("report_unused.json");
    let output = run(&[
        "verify",
        example_config().to_str().unwrap(),
        "--suite",
        suite.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("unknown check id"));
}

#[test]
fn verify_custom_suite_with_zero_tolerance_fails_with_exit_4() {
    let suite = temp_path("strict_suite.json");
    std::fs::write(
        &suite,
        r#"[{"check_id": "blockwise_matches_direct", "samples": 5, "tol_equality": 0.0}]"#,
    )
    .unwrap();
    let out = temp_path("report_strict.json");
    let output = run(&[
        "verify",
        example_config().to_str().unwrap(),
        "--suite",
        suite.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(4));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["checks"][0]["status"], "fail");
    assert!(report["checks"][0]["witness"].is_object());
}

// Acceptance: params, eval, sweep and verify on the bundled config are
// byte-stable across runs under a pinned seed, and verify exits 0 with at
// least 12 checks passing.
#[test]
fn cli_end_to_end_byte_stable() {
    let config = example_config();
    let config = config.to_str().unwrap();

    let params = [run(&["params", config]), run(&["params", config])];
    assert!(params[0].status.success());
    assert_eq!(params[0].stdout, params[1].stdout, "params output must be byte-stable");

    let eval_args = [
        "eval", config, "--s-re", "0.7", "--s-im", "3.1", "--d", "1.2", "--quantity", "impedance",
    ];
    let evals = [run(&eval_args), run(&eval_args)];
    assert!(evals[0].status.success());
    assert_eq!(evals[0].stdout, evals[1].stdout, "eval output must be byte-stable");

    let sweep_out_a = temp_path("stable_a.csv");
    let sweep_out_b = temp_path("stable_b.csv");
    for (out, _) in [(&sweep_out_a, 0), (&sweep_out_b, 1)] {
        let output = run(&[
            "sweep",
            config,
            "--f-start",
            "1e1",
            "--f-stop",
            "1e4",
            "--points",
            "50",
            "--sigma",
            "0.3",
            "--d",
            "2.0",
            "--quantities",
            "chain,abcd,admittance,impedance,bounds",
            "--out",
            out.to_str().unwrap(),
            "--full-matrices",
        ]);
        assert!(output.status.success(), "stderr: {}", stderr(&output));
    }
    assert_eq!(
        std::fs::read(&sweep_out_a).unwrap(),
        std::fs::read(&sweep_out_b).unwrap(),
        "sweep CSV must be byte-stable"
    );

    let report_a = temp_path("stable_report_a.json");
    let report_b = temp_path("stable_report_b.json");
    for out in [&report_a, &report_b] {
        let output = run(&["verify", config, "--out", out.to_str().unwrap()]);
        assert!(output.status.success(), "verify must exit 0");
    }
    assert_eq!(
        std::fs::read(&report_a).unwrap(),
        std::fs::read(&report_b).unwrap(),
        "verification report must be byte-stable"
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_a).unwrap()).unwrap();
    assert!(report["checks"].as_array().unwrap().len() >= 12);
    assert_eq!(report["failed"], 0);

    println!("acceptance 10 CLI end-to-end: PASS (params/eval/sweep/verify byte-stable, verify exit 0)");
}
