//! The `laxcoh` binary: artifacts, exit codes and report determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn laxcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laxcoh")).args(args).output().expect("binary runs")
}

fn config(name: &str) -> String {
    configs().join(name).display().to_string()
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("laxcoh-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn build_writes_basis_and_connection() {
    let out = scratch("build");
    let o = laxcoh(&["build", "--config", &config("gl2.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let basis = read_json(&out.join("basis.json"));
    // window [−4, 4]: 4 elements per degree
    assert_eq!(basis["count"], 36);
    assert_eq!(basis["elements"].as_array().unwrap().len(), 36);
    let jets = basis["elements"][0]["jets"].as_array().unwrap();
    assert_eq!(jets.len(), 4);
    assert_eq!(jets[0]["coefficients"].as_array().unwrap().len(), 6);
    assert!(out.join("connection.json").exists());
}

#[test]
fn loop_basis_is_monomial() {
    let out = scratch("loop");
    let o = laxcoh(&["build", "--config", &config("loop.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let basis = read_json(&out.join("basis.json"));
    for e in basis["elements"].as_array().unwrap() {
        let m = e["element"]["degree"].as_i64().unwrap();
        for row in e["element"]["matratfun"]["entries"].as_array().unwrap() {
            for f in row.as_array().unwrap() {
                let num = f["num"].as_array().unwrap();
                if !num.is_empty() {
                    // X·z^m: a single numerator term z^max(m, 0) over z^max(−m, 0)
                    let nonzero: Vec<usize> = (0..num.len()).filter(|&i| num[i] != "0").collect();
                    assert_eq!(nonzero, [m.max(0) as usize]);
                    assert_eq!(f["den"]["z_pow"].as_i64().unwrap(), (-m).max(0));
                }
            }
        }
    }
}

#[test]
fn input_errors_exit_one() {
    let out = scratch("bad");
    let dup = out.join("dup.json");
    std::fs::write(
        &dup,
        r#"{"flavor": {"kind": "gl", "n": 2},
            "weak_points": [{"gamma": "1", "alpha": ["1", "0"]}, {"gamma": "1", "alpha": ["1", "1"]}]}"#,
    )
    .unwrap();
    let o = laxcoh(&["build", "--config", dup.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate weak point"));

    let broken = out.join("broken.json");
    std::fs::write(&broken, "{").unwrap();
    assert_eq!(laxcoh(&["verify", "--config", broken.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(laxcoh(&["build", "--config", "/nonexistent/config.json"]).status.code(), Some(1));
    assert_eq!(laxcoh(&["verify", "--config", &config("sl2.json"), "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(laxcoh(&["verify", "--config", &config("sl2.json"), "--cycle", "gamma9"]).status.code(), Some(1));
}

#[test]
fn non_generic_data_exits_two() {
    let out = scratch("so3");
    let o = laxcoh(&["build", "--config", &config("so3.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-generic"));
}

fn table(cfg: &str, extra: &[&str], tag: &str) -> Value {
    let out = scratch(tag);
    let mut args = vec!["cocycle", "--config", cfg, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = laxcoh(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    read_json(&out.join("table.json"))
}

#[test]
fn cocycle_tables() {
    let t = table(&config("loop.json"), &["--which", "gamma1"], "g1");
    let entries = t["table"]["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        assert_eq!(e["n"].as_i64().unwrap() + e["m"].as_i64().unwrap(), 0);
    }
    assert_eq!(t["level_bounds"]["R"], 0);
    assert_eq!(t["level_bounds"]["S"], 0);

    let t = table(&config("sl2.json"), &["--which", "gamma2"], "g2");
    assert_eq!(t["nonzero_entries"], 0);

    let t = table(&config("sl2.json"), &["--which", "gamma1", "--cycle", "gamma1"], "weak");
    assert_eq!(t["nonzero_entries"], 0);
    assert_eq!(table(&config("sl2_gamma1_cycle.json"), &[], "weakcfg")["nonzero_entries"], 0);

    let combo = table(&config("gl2.json"), &["--which", "combo"], "combo");
    let g1 = table(&config("gl2.json"), &["--which", "gamma1"], "combo1");
    assert!(combo["nonzero_entries"].as_u64().unwrap() >= g1["nonzero_entries"].as_u64().unwrap());
}

fn verify(args: &[&str]) -> (Option<i32>, Value, Vec<u8>) {
    let mut a = vec!["verify"];
    a.extend_from_slice(args);
    let o = laxcoh(&a);
    let v = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    (o.status.code(), v, o.stdout)
}

#[test]
fn grading_suite_reports_m_zero_for_the_loop_algebra() {
    let (code, report, _) = verify(&["--config", &config("loop.json"), "--suite", "grading"]);
    assert_eq!(code, Some(0));
    let band = report["checks"].as_array().unwrap().iter().find(|e| e["id"] == "grading-band").unwrap();
    assert_eq!(band["witness"]["M"], 0);
}

#[test]
fn mismatched_omega_prime_fails_only_invariance() {
    let cfg = config("sl2.json");
    let omega = config("omega_prime_sl2.json");
    let (code, report, _) = verify(&["--config", &cfg, "--suite", "all", "--samples", "60", "--omega-prime", &omega]);
    assert_eq!(code, Some(2));
    let failing: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["status"] == "fail")
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["gamma1.cocycle-l-invariance", "gamma1.dg-mixed-cocycle"]);
    let (code, _, _) = verify(&["--config", &cfg, "--suite", "invariance", "--samples", "60"]);
    assert_eq!(code, Some(0));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--config", &config("gl2.json") as &str, "--suite", "cocycle", "--samples", "40"];
    let (code, _, a) = verify(&args);
    let (_, _, b) = verify(&args);
    assert_eq!(code, Some(0));
    assert_eq!(a, b);
}
