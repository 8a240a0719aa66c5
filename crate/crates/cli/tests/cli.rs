//! End-to-end checks of the command-line interface: exit codes, output
//! determinism, and the export formats.

use std::process::Command;

fn lieosc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lieosc"))
}

#[test]
fn gen_rep_b2_produces_ten_generators() {
    let out = lieosc()
        .args(["gen-rep", "--family", "b", "--rank", "2", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let js: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let basis = js["basis_x"].as_array().unwrap();
    assert_eq!(basis.len(), 10);
    for m in basis {
        assert_eq!(m["rows"], 5);
        assert_eq!(m["cols"], 5);
    }
}

#[test]
fn matrix_json_round_trips() {
    let out = lieosc()
        .args(["gen-rep", "--family", "c", "--rank", "2", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let js: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let metric = lieosc::SurdMat::from_json(&js["metric"]).unwrap();
    assert_eq!(metric.to_json(), js["metric"]);
    let x0 = lieosc::SurdMat::from_json(&js["basis_x"][0]).unwrap();
    assert_eq!(x0.to_json(), js["basis_x"][0]);
}

#[test]
fn exports_are_byte_identical_across_runs() {
    let run = || {
        lieosc()
            .args([
                "gen-tensors",
                "--family",
                "c",
                "--rank",
                "2",
                "--tensor",
                "c",
                "--format",
                "csv",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("i,j,k,value\n"));
    assert!(text.ends_with('\n'));
    assert!(text.lines().count() > 1);
}

/// The d_αβγ table for c_2 is identically zero, so its CSV is header-only.
#[test]
fn empty_tensor_is_header_only() {
    let out = lieosc()
        .args([
            "gen-tensors",
            "--family",
            "c",
            "--rank",
            "2",
            "--tensor",
            "dyyy",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "i,j,k,value\n");
}

#[test]
fn usage_errors_exit_2() {
    let out = lieosc()
        .args(["gen-rep", "--family", "q", "--rank", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = lieosc()
        .args(["check-quadratic", "--family", "d", "--rank", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = lieosc()
        .args(["osc-rep", "--family", "c", "--rank", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // clap-level parse failure
    let out = lieosc().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // bosonic pipeline without a cutoff
    let out = lieosc()
        .args([
            "check-rtt", "--family", "c", "--rank", "2", "--u", "2", "--v", "1", "--eta", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trivial_rtt_at_equal_parameters_exits_0() {
    let out = lieosc()
        .args([
            "check-rtt",
            "--family",
            "d",
            "--rank",
            "3",
            "--u",
            "1",
            "--v",
            "1",
            "--eta",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let js: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(js["pass"], true);
}

#[test]
fn spectrum_reports_two_eigenvalues() {
    let out = lieosc()
        .args(["spectrum", "--family", "d", "--rank", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let js: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = js["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2); // even and odd sectors
}

#[test]
fn output_file_and_env_dir() {
    let dir = std::env::temp_dir().join("lieosc_cli_test");
    let _ = std::fs::remove_dir_all(&dir);
    let out = lieosc()
        .env("LIEOSC_OUTPUT_DIR", &dir)
        .args([
            "gen-tensors",
            "--family",
            "c",
            "--rank",
            "2",
            "--tensor",
            "d",
            "--format",
            "csv",
            "--output",
            "d.csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.join("d.csv")).unwrap();
    assert!(written.starts_with("i,j,k,value\n"));
}
