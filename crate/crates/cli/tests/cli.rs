//! End-to-end runs of the `adz` binary: exit codes, output formats and provenance.

use std::path::PathBuf;
use std::process::{Command, Output};

fn workdir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(name: &str, body: &str) -> PathBuf {
    let path = workdir(name).join("config.json");
    std::fs::write(&path, body).unwrap();
    path
}

fn adz(args: &[&str], config: Option<&PathBuf>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_adz"));
    cmd.args(args);
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    cmd.output().expect("spawn adz")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows of a CSV report, preamble stripped.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let body: String = text.split("\r\n").filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\r\n");
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn unknown_key_is_a_config_error() {
    let cfg = write_config("unknown", r#"{"l_max": 3, "lmax": 4}"#);
    let o = adz(&["mellin-check"], Some(&cfg));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("lmax"), "{}", stderr(&o));
}

#[test]
fn malformed_json_reports_position() {
    let cfg = write_config("malformed", "{\n  \"l_max\": ,\n}");
    let o = adz(&["mellin-check"], Some(&cfg));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn missing_config_is_a_config_error() {
    let o = adz(&["sigma"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = adz(&["sigma", "--config", "/nonexistent/adz.json"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_values_are_config_errors() {
    let cfg = write_config("bad_density", r#"{"density": {"id": "nope"}}"#);
    assert_eq!(adz(&["decompose"], Some(&cfg)).status.code(), Some(2));
    let cfg = write_config("bad_greedy", r#"{"covering": [{"lambda": 4, "delta": 0.5}]}"#);
    assert_eq!(adz(&["bounds"], Some(&cfg)).status.code(), Some(2));
    let cfg = write_config("bad_threads", "{}");
    assert_eq!(adz(&["sigma", "--threads", "0"], Some(&cfg)).status.code(), Some(2));
}

#[test]
fn csv_report_has_provenance_preamble() {
    let cfg = write_config("csv", r#"{"l_max": 2}"#);
    let o = adz(&["mellin-check", "--no-timing", "--seed", "42"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.split("\r\n").collect();
    assert_eq!(lines[0], "# adz mellin-check");
    assert!(lines[1].starts_with("# version: "));
    assert_eq!(lines[2], "# seed: 42");
    assert!(lines[3].starts_with("# config: {"));
    // The resolved config carries the defaults as well as the given keys.
    let cfg: serde_json::Value = serde_json::from_str(&lines[3]["# config: ".len()..]).unwrap();
    assert_eq!(cfg["l_max"], 2);
    assert_eq!(cfg["n_values"], serde_json::json!([2, 3]));
    assert!(!text.contains("runtime_s"));
    assert!(!text.replace("\r\n", "").contains('\n'), "bare LF in output");
    let (header, rows) = csv_rows(&text);
    assert_eq!(header[0], "kind");
    assert!(rows.iter().any(|r| r[0] == "inverse") && rows.iter().any(|r| r[0] == "operator"));
    // Every float cell is the shortest round-trip form.
    let col = header.iter().position(|h| h == "residual").unwrap();
    for r in rows.iter().filter(|r| r[0] == "inverse") {
        let v: f64 = r[col].parse().unwrap();
        let shortest = if v != 0.0 && (v.abs() < 1e-5 || v.abs() >= 1e16) { format!("{v:e}") } else { format!("{v}") };
        assert_eq!(r[col], shortest);
    }
}

#[test]
fn timing_is_recorded_unless_disabled() {
    let cfg = write_config("timing", r#"{"l_max": 1, "alpha_max": 1, "k_max": 1}"#);
    let o = adz(&["mellin-check"], Some(&cfg));
    assert!(stdout(&o).contains("# runtime_s: "));
}

#[test]
fn json_report_and_out_file() {
    let dir = workdir("json");
    let cfg = write_config("json", r#"{"format": "json", "s_max": 2.0, "s_step": 0.5}"#);
    let out = dir.join("sigma.json");
    let o = adz(&["sigma", "--no-timing", "--out", out.to_str().unwrap()], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["provenance"]["command"], "sigma");
    assert_eq!(v["provenance"]["seed"], 1);
    assert!(v["provenance"].get("runtime_s").is_none());
    let columns = v["columns"].as_array().unwrap();
    assert_eq!(columns[0], "s");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == columns.len()));
    let f0 = rows[0][1].as_f64().unwrap();
    assert!((f0 - 4.0 * std::f64::consts::PI).abs() < 1e-6);
    assert_eq!(v["summary"]["kappa_matches_printed"], false);
}

#[test]
fn failed_self_check_exits_with_tolerance_code() {
    let cfg = write_config(
        "tolerance",
        r#"{"density": {"id": "shifted_gaussian"}, "n": 3, "alpha": 1, "grid_resolution": 1, "sphere_resolution": 12}"#,
    );
    let o = adz(&["represent", "--no-timing"], Some(&cfg));
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("check failed"));
    // The table is still written.
    let (header, rows) = csv_rows(&stdout(&o));
    assert!(header.contains(&"corrected_error".to_string()));
    assert!(!rows.is_empty());
}

#[test]
fn passing_reconstruction_exits_cleanly() {
    let cfg = write_config(
        "represent_ok",
        r#"{"density": {"id": "radial_gaussian"}, "n": 2, "alpha": 0, "grid_resolution": 2}"#,
    );
    let o = adz(&["represent", "--no-timing"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn precondition_failure_exits_with_code_4() {
    // Too few trials is caught while reading the config.
    let cfg = write_config("few_trials", r#"{"density": {"id": "shifted_gaussian"}, "trials": 5}"#);
    assert_eq!(adz(&["rvfl"], Some(&cfg)).status.code(), Some(2));
    // The sigma density has no moment of order 2, which only the campaign setup detects.
    let cfg = write_config("precondition", r#"{"density": {"id": "sigma"}, "n": 3, "alpha": 2}"#);
    let o = adz(&["rvfl"], Some(&cfg));
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    assert!(stderr(&o).contains("no moment"));
}

#[test]
fn bounds_flag_infeasible_rows() {
    let cfg = write_config(
        "bounds",
        r#"{"chernoff": {"n": [1.0, 16.0]}, "covering": [{"lambda": 1, "delta": 0.1}], "rnn": {"m": [16, 1048576], "k_rate": [2.0]}}"#,
    );
    let o = adz(&["bounds", "--no-timing"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, rows) = csv_rows(&stdout(&o));
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let chernoff: Vec<_> = rows.iter().filter(|r| r[0] == "chernoff").collect();
    assert_eq!(chernoff.len(), 2);
    assert_eq!(chernoff[0][col("feasible")], "false");
    assert_eq!(chernoff[1][col("feasible")], "true");
    assert!((chernoff[1][col("zeta")].parse::<f64>().unwrap() - 29.8564).abs() < 1e-3);
    let cover = rows.iter().find(|r| r[0] == "covering").unwrap();
    assert_eq!(cover[col("greedy")], "10");
    assert_eq!(cover[col("greedy_in_sandwich")], "true");
    assert_eq!(rows.iter().filter(|r| r[0] == "rnn").count(), 2);
}

#[test]
fn decompose_writes_all_degrees() {
    let cfg = write_config(
        "decompose",
        r#"{"density": {"id": "shifted_gaussian"}, "n": 3, "l_values": [0, 2], "t_values": [1.0], "directions": 1, "abel": false}"#,
    );
    let o = adz(&["decompose", "--no-timing"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header[0], "l");
    assert_eq!(rows.len(), 2);
}

#[test]
fn small_campaign_is_thread_count_invariant() {
    let cfg = write_config(
        "campaign",
        r#"{"density": {"id": "shifted_gaussian"}, "m_values": [64, 128], "trials": 30, "grid_resolution": 2,
            "target_sphere_resolution": 12, "density_sphere_resolution": 16, "slope_range": null}"#,
    );
    let run = |threads: &str| {
        let o = adz(&["rvfl", "--no-timing", "--seed", "7", "--threads", threads], Some(&cfg));
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("2"));
    assert_eq!(one, run("1"));
    let text = String::from_utf8(one).unwrap();
    assert!(text.contains("# seed: 7\r\n"));
    let (_, rows) = csv_rows(&text);
    assert_eq!(rows.len(), 2 * 8);
}
