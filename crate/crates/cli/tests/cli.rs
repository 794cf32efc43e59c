use std::path::PathBuf;
use std::process::{Command, Output};

fn viennot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_viennot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn schensted_worked_example() {
    let o = viennot(&["schensted", "5,1,3,6,7,2,4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("P:\n1 2 4 7\n"), "{s}");
    assert!(s.contains("shadow set {(2,5), (6,3), (7,6)}"));
}

#[test]
fn schensted_identity_single_row() {
    let o = viennot(&["schensted", "1,2,3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["p"], serde_json::json!([[1, 2, 3]]));
    assert_eq!(v["p"], v["q"]);
}

#[test]
fn schensted_colored_monomial() {
    let o = viennot(&["schensted", "2^1,5^0,3^0,1^0,6^0,4^1"]);
    assert!(stdout(&o).contains("monomial: x[1,2]*x[6,4]*x[3,5]^2*x[4,3]^2"));
}

#[test]
fn parse_error_reports_column_and_exits_2() {
    let o = viennot(&["schensted", "3,1,x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 5"));
    assert_eq!(viennot(&["hilbert", "--path", "sideways"]).status.code(), Some(2));
}

#[test]
fn b3_reference_mismatch_exits_1() {
    let o = viennot(&["hilbert", "--n", "3", "--r", "2", "--path", "both", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["series"]["enumerate"], v["series"]["fast"]);
    assert_eq!(v["series"]["fast"][3], "15");
    let checks = v["checks"].as_array().unwrap();
    let status = |name: &str| checks.iter().find(|c| c["name"] == name).unwrap()["status"].clone();
    assert_eq!(status("paths_agree"), "pass");
    assert_eq!(status("reference_series"), "reference_mismatch");
}

#[test]
fn uncolored_reference_passes() {
    let o = viennot(&["hilbert", "--n", "3", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 + 4q + q^2"));
}

#[test]
fn analyze_b9_violation_at_three() {
    let o = viennot(&["analyze", "--n", "9", "--r", "2", "--path", "fast", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["log_concavity"]["violations"], serde_json::json!([3]));
    assert_eq!(v["unimodality"]["unimodal"], true);
}

#[test]
fn verify_small_case() {
    let o = viennot(&["verify", "--n", "1", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = viennot(&["verify", "--n", "2", "--r", "3", "--seed", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn resource_cap_exits_3() {
    assert_eq!(viennot(&["verify", "--n", "4", "--r", "2"]).status.code(), Some(3));
    assert_eq!(viennot(&["hilbert", "--n", "6", "--r", "2", "--cap", "1000"]).status.code(), Some(3));
}

#[test]
fn strata_csv() {
    let o = viennot(&["strata", "--n", "3", "--r", "1", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "k,num_lambdas,sum_dim_sq,hilbert_coeff,match\n0,1,1,1,true\n1,1,4,4,true\n2,1,1,1,true\n3,0,0,0,true\n"
    );
}

#[test]
fn histogram_to_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli_hist_a10.csv");
    let p = path.to_str().unwrap();
    let o = viennot(&["histogram", "--kind", "a", "--n", "10", "--path", "both", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().next(), Some("k,count"));
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.contains("\n1,1\n"));
}

#[test]
fn chartable_json() {
    let o = viennot(&["chartable", "--n", "2", "--r", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["irreducibles"].as_array().unwrap().len(), 5);
    assert_eq!(v["modulus"], 2);
    assert_eq!(viennot(&["chartable", "--n", "6", "--r", "2"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--n", "3", "--r", "2", "--seed", "11", "--format", "json"];
    assert_eq!(viennot(&args).stdout, viennot(&args).stdout);
    let args = ["verify", "--n", "3", "--r", "2", "--seed", "11", "--threads", "1", "--format", "json"];
    assert_eq!(viennot(&args).stdout, viennot(&args[..]).stdout);
}
