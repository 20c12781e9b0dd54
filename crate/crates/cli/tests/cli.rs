use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gindex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn write_spec(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn json_of(args: &[&str]) -> (Value, String) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = gindex(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    (serde_json::from_str(&text).unwrap(), text)
}

#[test]
fn morita_golden() {
    let o = gindex(&["example", "morita", "--m", "5", "--h", "1"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert!(t.contains("SU(1,4) SU(2,3)"));
    assert!(t.contains("rational isotypic {1: 2, 5: 5}"));
    let (j, _) = json_of(&["analyze", &config("morita_5_1.json")]);
    assert_eq!(j["factors"]["list"], "Sp_2 SU(1,4) SU(2,3)");
    assert_eq!(j["isotypic"]["rational_isotypic"]["5"], 5);
}

#[test]
fn double_cover_golden() {
    let o = gindex(&["analyze", &config("double_cover.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("c1(E_1) = 1/8 σ + 1/8 η_1"));
    assert!(stdout(&o).contains("c1(E_-1) = 1/8 σ - 1/8 η_1"));
    let (j, _) = json_of(&["analyze", &config("double_cover.json")]);
    assert_eq!(j["solved"]["expressions"]["c1(E_1)"], "1/8 σ + 1/8 η_1");
    assert_eq!(j["solved"]["classes"][0]["sigma"], "1/8");
}

#[test]
fn free_action_has_empty_eta() {
    let (j, _) = json_of(&["analyze", &config("free_z3.json")]);
    assert_eq!(j["system"]["eta_index"], serde_json::json!([]));
    for c in j["solved"]["classes"].as_array().unwrap() {
        assert_eq!(c["eta"], serde_json::json!({}));
    }
    assert_eq!(j["image"]["basis"], serde_json::json!(["sigma"]));
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        vec!["example", "morita", "--m", "7", "--h", "2"],
        vec!["example", "ak7", "--h", "2"],
        vec!["analyze", "CONFIG"],
        vec!["toledo", "--h", "3"],
    ] {
        let path = config("double_cover.json");
        let args: Vec<&str> = args
            .iter()
            .map(|a| if *a == "CONFIG" { path.as_str() } else { a })
            .collect();
        let (v, text) = json_of(&args);
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn table_and_json_agree() {
    for args in [
        vec!["example", "morita", "--m", "6", "--h", "2"],
        vec!["example", "ak7", "--h", "2", "--j0", "3"],
        vec!["example", "ak2", "--fibering", "2"],
    ] {
        let (j, _) = json_of(&args);
        let table = stdout(&gindex(&args));
        for (label, expr) in j["solved"]["expressions"].as_object().unwrap() {
            let line = format!("{label} = {}", expr.as_str().unwrap());
            assert!(table.contains(&line), "missing {line}");
        }
        assert!(table.contains(j["factors"]["list"].as_str().unwrap()));
        for (id, row) in j["image"]["identification"]
            .as_array()
            .unwrap()
            .iter()
            .zip(j["image"]["matrix"].as_array().unwrap())
        {
            let cells: Vec<&str> = row
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap())
                .collect();
            let line = format!("{}: [{}]", id.as_str().unwrap(), cells.join(", "));
            assert!(table.contains(&line), "missing {line}");
        }
        for r in j["eigenranks"].as_array().unwrap() {
            let line = format!("E_{}: {}", r["q"].as_str().unwrap(), r["rank"]);
            assert!(table.contains(&line), "missing {line}");
        }
    }
}

#[test]
fn toledo_reports_fit() {
    let (j, _) = json_of(&["toledo", "--h", "2"]);
    assert_eq!(j["j0"], 1);
    assert_eq!(j["fitted_lambda"], "-1/16");
    let coeffs: Vec<&str> = j["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["sigma_coeff"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, vec!["3/112", "5/112", "3/56"]);
}

#[test]
fn cobordism_ak2() {
    let (j, _) = json_of(&[
        "cobordism",
        &config("ak2_fibering1.json"),
        &config("ak2_fibering2.json"),
    ]);
    assert_eq!(j["all_equal"], true);
    assert_eq!(j["entries"][1]["first"], "8");
    let dir = tempfile::tempdir().unwrap();
    let bumped = std::fs::read_to_string(config("ak2_fibering2.json"))
        .unwrap()
        .replace("\"-32\"", "\"-30\"");
    let p = write_spec(&dir, "bumped.json", &bumped);
    let (j, _) = json_of(&["cobordism", &config("ak2_fibering1.json"), &p]);
    assert_eq!(j["all_equal"], false);
    let missing = write_spec(
        &dir,
        "missing.json",
        r#"{"action": {"example": "ak2"}, "base_genus": 129, "sigma": "32"}"#,
    );
    let o = gindex(&["cobordism", &config("ak2_fibering1.json"), &missing]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write_spec(&dir, "garbage.json", "{ not json");
    assert_eq!(gindex(&["analyze", &garbage]).status.code(), Some(2));
    let bad_class = write_spec(
        &dir,
        "bad.json",
        r#"{"m": 4, "quotient_genus": 1, "fixed_points": {"2": 2}}"#,
    );
    assert_eq!(gindex(&["analyze", &bad_class]).status.code(), Some(2));
    let odd = write_spec(
        &dir,
        "odd.json",
        r#"{"m": 4, "quotient_genus": 1, "fixed_points": {"1": 1}}"#,
    );
    assert_eq!(gindex(&["analyze", &odd]).status.code(), Some(3));
    assert_eq!(
        gindex(&["example", "morita", "--m", "5", "--h", "1", "--solver", "magic"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gindex(&["toledo", "--h", "2", "--sigma-row", "flat-sum"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        gindex(&["example", "morita", "--m", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn strategies_change_nothing_observable() {
    let (a, _) = json_of(&["example", "morita", "--m", "7", "--h", "1"]);
    let (b, _) = json_of(&[
        "example",
        "morita",
        "--m",
        "7",
        "--h",
        "1",
        "--deg0",
        "root-count",
        "--multiplicity",
        "closed-form",
        "--certifier",
        "elimination",
        "--solver",
        "orthogonality",
    ]);
    for key in ["factors", "signatures", "solved", "image", "certificates"] {
        assert_eq!(a[key], b[key], "{key}");
    }
}

#[test]
fn verify_passes_and_fault_fails() {
    let o = gindex(&["verify"]);
    let t = stdout(&o);
    assert!(o.status.success(), "{t}");
    assert_eq!(t.lines().filter(|l| l.starts_with("PASS")).count(), 10);
    let o = gindex(&["verify", "--max-m", "4", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL [fault]"));
}
