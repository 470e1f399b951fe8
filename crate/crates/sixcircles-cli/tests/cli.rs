//! End-to-end tests of the `sixcircles` binary: exit codes, report schema,
//! determinism, config handling, and figure output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sixcircles"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

/// Removes timing fields before comparing reports.
fn strip_wall(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("valid JSON");
    if let Some(results) = v["results"].as_array_mut() {
        for r in results {
            r.as_object_mut().unwrap().remove("wall_ms");
        }
    }
    v
}

#[test]
fn list_text_has_header_and_22_entries() {
    let out = run(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 23);
    assert!(text.contains("THM_2_1"));
    assert!(text.contains("Theorem 2.1"));
    assert!(text.contains("NEG_CONTROL"));
}

#[test]
fn list_json_is_machine_readable() {
    let out = run(&["list", "--format", "json"]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 22);
    for row in &rows {
        for key in ["id", "anchor", "center", "constraint", "family", "statement"] {
            assert!(row.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn verify_single_identity_succeeds() {
    let out = run(&["verify", "THM_5_1", "--n", "50", "--seed", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["run"]["seed"], 1);
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
    let row = &v["results"][0];
    assert_eq!(row["id"], "THM_5_1");
    assert_eq!(row["pass"], true);
    for key in ["id", "paper_anchor", "n", "pass", "max_rel_residual", "wall_ms"] {
        assert!(row.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_negative_control_exits_one() {
    let out = run(&["verify", "NEG_CONTROL", "--n", "60", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("NEG_CONTROL"), "stderr names the identity: {err}");
    assert!(err.contains("rel_residual"), "stderr shows worst sample: {err}");
}

#[test]
fn verify_all_with_small_n_exits_zero_and_reports_22_rows() {
    let out = run(&["verify", "all", "--n", "40", "--seed", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 22);
    // The negative control shows its raw failure in the report.
    let neg = rows.iter().find(|r| r["id"] == "NEG_CONTROL").unwrap();
    assert_eq!(neg["pass"], false);
}

#[test]
fn unknown_identity_is_a_usage_error() {
    let out = run(&["verify", "THM_0_0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["figure", "nonsense", "--out", "/tmp/never.svg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_flags_exit_two() {
    let out = run(&["verify", "THM_5_1", "--width", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_across_runs_and_thread_counts() {
    let a = run(&["verify", "all", "--n", "40", "--seed", "1", "--threads", "1"]);
    let b = run(&["verify", "all", "--n", "40", "--seed", "1", "--threads", "2"]);
    let c = run(&["verify", "all", "--n", "40", "--seed", "1"]);
    assert!(a.status.success() && b.status.success() && c.status.success());
    let ja = strip_wall(&stdout(&a));
    let jb = strip_wall(&stdout(&b));
    let jc = strip_wall(&stdout(&c));
    assert_eq!(ja, jb);
    assert_eq!(ja, jc);
    // Byte-identical once the timing fields are normalized away.
    assert_eq!(ja.to_string(), jb.to_string());
}

#[test]
fn seed_changes_change_the_report() {
    let a = run(&["verify", "THM_4_1", "--n", "40", "--seed", "1"]);
    let b = run(&["verify", "THM_4_1", "--n", "40", "--seed", "2"]);
    let ja = strip_wall(&stdout(&a));
    let jb = strip_wall(&stdout(&b));
    assert_ne!(ja, jb);
}

#[test]
fn env_var_supplies_the_default_seed() {
    let with_env = bin()
        .args(["verify", "THM_4_1", "--n", "40"])
        .env("SIXCIRCLES_SEED", "2")
        .output()
        .unwrap();
    let explicit = run(&["verify", "THM_4_1", "--n", "40", "--seed", "2"]);
    assert_eq!(
        strip_wall(&stdout(&with_env)),
        strip_wall(&stdout(&explicit))
    );
}

#[test]
fn config_file_mirrors_flags() {
    let dir = std::env::temp_dir();
    let cfg_path = dir.join("sixcircles_test_config.txt");
    std::fs::write(&cfg_path, "n = 40\nseed = 9\nformat = json\n# comment\n").unwrap();
    let via_cfg = run(&["verify", "THM_4_1", "--config", cfg_path.to_str().unwrap()]);
    let via_flags = run(&["verify", "THM_4_1", "--n", "40", "--seed", "9"]);
    assert_eq!(
        strip_wall(&stdout(&via_cfg)),
        strip_wall(&stdout(&via_flags))
    );
    // Explicit flags override the file.
    let overridden = bin()
        .args(["verify", "THM_4_1", "--config", cfg_path.to_str().unwrap()])
        .args(["--seed", "1", "--n", "40"])
        .output()
        .unwrap();
    let direct = run(&["verify", "THM_4_1", "--n", "40", "--seed", "1"]);
    assert_eq!(
        strip_wall(&stdout(&overridden)),
        strip_wall(&stdout(&direct))
    );
}

#[test]
fn text_format_writes_aligned_rows() {
    let out = run(&["verify", "THM_5_1", "--n", "40", "--seed", "1", "--format", "text"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().count() >= 3);
    assert!(text.contains("THM_5_1"));
    assert!(text.contains("pass"));
}

#[test]
fn report_goes_to_file_with_out_flag() {
    let path = std::env::temp_dir().join("sixcircles_report_test.json");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "verify",
        "THM_5_1",
        "--n",
        "40",
        "--seed",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(serde_json::from_str::<serde_json::Value>(&body).is_ok());
}

#[test]
fn every_identity_renders_a_figure() {
    let dir = std::env::temp_dir().join("sixcircles_figures_test");
    std::fs::create_dir_all(&dir).unwrap();
    let list = run(&["list", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&list)).unwrap();
    for row in rows {
        let id = row["id"].as_str().unwrap();
        let path: PathBuf = dir.join(format!("{id}.svg"));
        let out = run(&["figure", id, "--out", path.to_str().unwrap()]);
        assert!(out.status.success(), "{id}");
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<svg version=\"1.1\""), "{id}");
        assert!(svg.ends_with("</svg>\n"), "{id}");
    }
}

#[test]
fn figure_output_is_deterministic() {
    let p1 = std::env::temp_dir().join("sixcircles_fig_a.svg");
    let p2 = std::env::temp_dir().join("sixcircles_fig_b.svg");
    run(&["figure", "THM_6_3", "--out", p1.to_str().unwrap()]);
    run(&["figure", "THM_6_3", "--out", p2.to_str().unwrap()]);
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert_eq!(a, b);
}

#[test]
fn invariants_and_oracles_commands_pass() {
    let out = run(&["invariants", "--n", "100", "--seed", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["oracles", "--n", "200", "--seed", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn permute_confirms_documented_labeling() {
    let out = run(&["permute", "THM_8_1", "--m", "25", "--seed", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["documented_labeling_included"], true);
    assert!(!v["satisfying_relabelings"].as_array().unwrap().is_empty());
}

#[test]
fn stress_mode_reports_without_failing() {
    let out = run(&["verify", "LEM_5_3", "--n", "60", "--seed", "1", "--stress"]);
    assert!(out.status.success());
}
