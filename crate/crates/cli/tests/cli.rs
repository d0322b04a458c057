use std::process::{Command, Output};

fn isobasis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isobasis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn enumerate_json_lists_ten_subspaces() {
    let out = isobasis(&["enumerate", "--d", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["d"], 2);
    assert_eq!(v["count"], 10);
    let subs = v["subspaces"].as_array().unwrap();
    assert_eq!(subs.len(), 10);
    assert!(subs
        .iter()
        .any(|s| s["basis"] == serde_json::json!(["1010", "0100"])
            && s["alpha"] == serde_json::json!(["[1,3]", "[2,2]"])));
}

#[test]
fn verify_small_passes() {
    let out = isobasis(&["verify", "--d-max", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("phi-membership: PASS, d=3"));
    assert!(text.contains("all "));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_json_report() {
    let out = isobasis(&["verify", "--d-max", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["lines"].as_array().unwrap().len() > 20);
}

#[test]
fn exceptional_f4() {
    let out = isobasis(&["exceptional", "--type", "F4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("F4 n_c=11"));
    assert!(text.contains("table checks: PASS, determinant 1"));
    assert!(text.contains("cx cross-check with S_4: PASS"));
    // header + 11 rows
    let rows = text.lines().filter(|l| {
        l.trim_end().ends_with("cx")
            || l.trim_end().ends_with("intermediate")
            || l.trim_end().ends_with("constructible")
    });
    assert_eq!(rows.count(), 11);

    let out = isobasis(&["exceptional", "--type", "F4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let m = v[0]["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 11);
    assert!(m.iter().all(|r| r.as_array().unwrap().len() == 11));
    assert_eq!(m[3], serde_json::json!([1, 2, 1, 1, 0, 0, 0, 0, 0, 0, 0]));
}

#[test]
fn exceptional_csv_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e8.csv");
    let out = isobasis(&[
        "exceptional",
        "--type",
        "E8",
        "--nc",
        "17",
        "--format",
        "csv",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(body.lines().count(), 18);
    assert!(body.lines().next().unwrap().starts_with("4480"));
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("e8.json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["n_c"], 17);
    assert_eq!(sidecar["marks"].as_array().unwrap().len(), 17);
}

#[test]
fn basis_csv_and_kostka_json() {
    let out = isobasis(&["basis", "--d", "1", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "00,01,10\n1,0,0\n1,1,0\n1,0,1\n");

    let out = isobasis(&["kostka", "--m", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["table"]["2+1"]["1+1+1"], 2);
    assert_eq!(v[0]["bijection"]["3"], "3");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(isobasis(&["enumerate", "--bogus"]).status.code(), Some(2));
    assert_eq!(isobasis(&["enumerate", "--d", "6"]).status.code(), Some(2));
    assert_eq!(
        isobasis(&["exceptional", "--type", "F4", "--nc", "7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        isobasis(&["exceptional", "--type", "H3"]).status.code(),
        Some(2)
    );
    assert_eq!(isobasis(&["kostka", "--m", "9"]).status.code(), Some(2));
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_isobasis"))
        .args(["phi", "--d", "2", "--format", "json"])
        .env("ISOBASIS_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["tilde_v_size"], 10);
}

#[test]
fn report_is_deterministic() {
    let a = isobasis(&["report", "--d-max", "3", "--format", "json"]);
    let b = isobasis(&[
        "report",
        "--d-max",
        "3",
        "--format",
        "json",
        "--threads",
        "1",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
