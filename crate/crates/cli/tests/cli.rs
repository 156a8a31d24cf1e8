use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeta-towers"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_fixture(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

/// Compares with `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

#[test]
fn ex11_golden_reports() {
    for (cmd, extra) in [
        ("zeta", &["--level", "2"][..]),
        ("lfunctions", &["--level", "2"][..]),
        ("tower", &[][..]),
        ("invariants", &[][..]),
        ("verify", &["--level", "2", "--subgroup-order", "2"][..]),
    ] {
        let mut args = extra.to_vec();
        args.push("--json");
        let first = run_fixture(cmd, "ex11.json", &args);
        assert_eq!(first.status.code(), Some(0), "{cmd}: {}", stderr(&first));
        let second = run_fixture(cmd, "ex11.json", &args);
        assert_eq!(first.stdout, second.stdout, "{cmd} is not deterministic");
        golden(&format!("ex11_{cmd}.json"), &stdout(&first));
    }
}

#[test]
fn ex11_values() {
    let z = json(&run_fixture("zeta", "ex11.json", &["--level", "2", "--json"]));
    assert_eq!(z["h"], serde_json::json!([1, 0, 2, 0, -9, 0, -20, 0, -1, 0, 18, 0, 9]));
    assert_eq!((z["chi"].as_i64(), z["kappa"].as_i64()), (Some(-2), Some(32)));

    let l = json(&run_fixture("lfunctions", "ex11.json", &["--level", "2", "--json"]));
    let rows = l["lfunctions"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["h_at_1"]["coefficients"], serde_json::json!([0]));
    assert_eq!(l["orbit_products"][1]["product_h_at_1"], 4);

    let t = json(&run_fixture("tower", "ex11.json", &["--json"]));
    let levels = t["levels"].as_array().unwrap();
    assert_eq!(levels[0]["kappa"], 2);
    for row in levels {
        assert_eq!(row["chi"], row["chi_riemann_hurwitz"]);
    }

    let inv = json(&run_fixture("invariants", "ex11.json", &["--json"]));
    let sweep = &inv["sweep"];
    assert_eq!((sweep["mu"].as_i64(), sweep["lambda"].as_i64(), sweep["nu"].as_i64()), (Some(1), Some(1), Some(-1)));
    assert_eq!(inv["characteristic_ideal"]["f"], serde_json::json!([0, 4, 2]));
    assert_eq!(inv["flags"], serde_json::json!([]));
}

#[test]
fn human_and_json_agree() {
    let human = stdout(&run_fixture("tower", "ex11.json", &[]));
    let machine = json(&run_fixture("tower", "ex11.json", &["--json"]));
    for row in machine["levels"].as_array().unwrap() {
        let kappa = row["kappa"].to_string();
        let line = human
            .lines()
            .find(|l| l.split_whitespace().next() == Some(&row["n"].to_string()))
            .expect("row present");
        assert!(line.split_whitespace().any(|w| w == kappa), "{line} lacks {kappa}");
    }
}

fn check_status<'a>(report: &'a Value, name: &str) -> &'a str {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["status"]
        .as_str()
        .unwrap()
}

#[test]
fn verify_battery() {
    let v = json(&run_fixture("verify", "ex11.json", &["--level", "2", "--subgroup-order", "2", "--json"]));
    assert_eq!(v["all_passed"], true);
    assert_eq!(check_status(&v, "inflation"), "not equal (expected)");
    assert_eq!(check_status(&v, "link_zak"), "pass");

    let v1 = json(&run_fixture("verify", "ex11.json", &["--level", "1", "--json"]));
    assert_eq!(check_status(&v1, "vanishing order"), "skipped");
    let detail = v1["checks"].as_array().unwrap().iter().find(|c| c["check"] == "vanishing order").unwrap()["detail"].clone();
    assert!(detail.as_str().unwrap().contains("= 0"));

    let k3 = run_fixture("verify", "k3_unramified.json", &["--level", "2", "--json"]);
    assert_eq!(k3.status.code(), Some(0));
    let k3 = json(&k3);
    assert_eq!(k3["all_passed"], true);
    assert!(k3["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn fully_ramified_has_trivial_g() {
    let inv = json(&run_fixture("invariants", "fully_ramified.json", &["--json"]));
    assert_eq!(inv["g"]["representative"], serde_json::json!([1]));
    assert_eq!(inv["sweep"]["status"], "certified");
}

#[test]
fn exit_codes() {
    let o = run_fixture("zeta", "disconnected.json", &["--level", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("level 1 disconnected"));

    let o = run_fixture("invariants", "unramified_cycle.json", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("undefined: V^ram = ∅ and χ(X) = 0"));

    let o = run_fixture("invariants", "late_regime.json", &["--max-level", "5", "--json"]);
    assert_eq!(o.status.code(), Some(3));
    let report = json(&o);
    assert_eq!(report["closed_form"]["lambda"], 9);
    assert_eq!(report["sweep"]["mu"], Value::Null);
    assert_eq!(report["flags"].as_array().unwrap().len(), 1);
    let o = run_fixture("invariants", "late_regime.json", &["--max-level", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["sweep"]["n0"], 4);

    let o = run_fixture("verify", "ex11.json", &["--level", "2", "--subgroup-order", "3"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["zeta", "/nonexistent/datum.json"]);
    assert_eq!(o.status.code(), Some(1));

    let dir = std::env::temp_dir().join(format!("zeta-towers-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"prime\": 6,\n  \"vertices\": [],\n  \"edges\": [],\n  \"ramification\": {}\n}\n").unwrap();
    let o = run(&["zeta", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}
