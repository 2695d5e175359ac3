use std::path::Path;
use std::process::Command;

use nevlab::criterion::CriterionProfile;

fn nevlab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nevlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_lp_passes_on_identity() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "lp.json", r#"{"version": "1", "f": [[0, 0], [1, 0]]}"#);
    let out = dir.path().join("lp.csv");
    let o = nevlab(&["verify-lp", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lhs,rhs,rel_error,tol,pass"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(row[2].parse::<f64>().unwrap() <= 1e-8);
    assert_eq!(row[4], "true");
}

#[test]
fn criterion_reports_noncompact_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cr.json",
        r#"{"version": "1", "task": "criterion", "catalog": "square-atom", "expect": "NonCompact"}"#,
    );
    let out = dir.path().join("cr.json.out");
    let o = nevlab(&["criterion", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(value["verdict"]["kind"], "NonCompact");
    let profile: CriterionProfile = serde_json::from_value(value["profile"].clone()).unwrap();
    let again: CriterionProfile =
        serde_json::from_str(&serde_json::to_string(&profile).unwrap()).unwrap();
    assert_eq!(again, profile);
    assert_eq!(profile.radii, vec![0.9, 0.99, 0.995, 0.999]);
}

#[test]
fn wrong_expectation_is_a_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cr.json", r#"{"version": "1", "catalog": "half-atom", "expect": "NonCompact"}"#);
    let o = nevlab(&["criterion", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_zero_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bad.json",
        r#"{"version": "1", "theta": {"zeros": [{"point": [0.2, 0]}, {"point": [1.0, 0.5]}]}}"#,
    );
    let o = nevlab(&["kernel", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let record: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(record["error"], "config");
    assert_eq!(record["field"], "theta.zeros[1].point");
}

#[test]
fn parse_errors_carry_paths() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", r#"{"version": "1", "numerics": {"angular_count": -3}}"#);
    let o = nevlab(&["criterion", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let record: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(record["field"], "numerics.angular_count");

    let cfg = write(dir.path(), "v.json", r#"{"version": "2"}"#);
    let o = nevlab(&["verify-lp", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));

    let cfg = write(dir.path(), "u.json", r#"{"version": "1", "colour": 3}"#);
    assert_eq!(nevlab(&["verify-lp", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn not_a_self_map_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "phi.json",
        r#"{"version": "1", "phi": {"kind": "polynomial", "coeffs": [[0, 0], [1.5, 0]]}}"#,
    );
    let o = nevlab(&["counting", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let record: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(record["field"], "phi");
}

#[test]
fn missing_inputs_for_task() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "e.json", r#"{"version": "1"}"#);
    let o = nevlab(&["criterion", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let record: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(record["field"], "phi");
}

#[test]
fn list_catalog() {
    let o = nevlab(&["--list-catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("square-atom\tNonCompact")));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let configs = [
        ("counting", r#"{"version": "1", "phi": {"kind": "blaschke", "zeros": [{"point": [0.3, 0.2]}, {"point": [-0.5, 0.1]}]}, "numerics": {"sample_count": 50}}"#),
        ("counting", r#"{"version": "1", "catalog": "ball-slice-atom", "numerics": {"sample_count": 5, "sphere_n": 500}}"#),
        ("basis", r#"{"version": "1", "theta": {"zeros": [{"point": [0.3, 0.2]}, {"point": [-0.5, 0.1], "multiplicity": 2}]}}"#),
        ("heatmap", r#"{"version": "1", "catalog": "identity-atom", "numerics": {"heat_radial": 8, "heat_angular": 16}}"#),
        ("criterion", r#"{"version": "1", "catalog": "identity-power4", "numerics": {"angular_count": 32}}"#),
        ("cohn", r#"{"version": "1", "theta": {"zeros": [{"point": [0, 0], "multiplicity": 2}]}, "numerics": {"p": [0.25, 0.5]}}"#),
    ];
    for (k, (task, text)) in configs.iter().enumerate() {
        let cfg = write(dir.path(), &format!("c{k}.json"), text);
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("o{k}_{run}"));
            let o = nevlab(&[task, "--config", &cfg, "--seed", "7", "--out", out.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{task}: {}", String::from_utf8_lossy(&o.stderr));
            outputs.push(std::fs::read(out).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{task}");
    }
}

#[test]
fn seed_changes_sampled_points() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"version": "1", "catalog": "square-atom", "numerics": {"sample_count": 3}}"#);
    let a = nevlab(&["counting", "--config", &cfg, "--seed", "1"]).stdout;
    let b = nevlab(&["counting", "--config", &cfg, "--seed", "2"]).stdout;
    assert_ne!(a, b);
}

#[test]
fn csv_numbers_have_enough_digits() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "k.json", r#"{"version": "1", "theta": {"zeros": [{"point": [0, 0], "multiplicity": 2}]}, "numerics": {"points": [[0.5, 0]]}}"#);
    let o = nevlab(&["kernel", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    // ‖k_w‖ = sqrt(1.25) for Θ = z², w = 0.5
    assert_eq!(row[4], "1.11803398874989e0");
    let mantissa = row[4].split('e').next().unwrap();
    assert!(mantissa.replace(['.', '-'], "").len() >= 12);
}
