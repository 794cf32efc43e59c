use serde_json::Value;
use viennot_wasm::{hilbert_histogram_json, shadow_diagram_json, strata_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn shadow_diagram_of_worked_example() {
    let v = parse(shadow_diagram_json("5,1,3,6,7,2,4").unwrap());
    assert_eq!(v["levels"][0]["shadow_set"], serde_json::json!([[2, 5], [6, 3], [7, 6]]));
    assert_eq!(v["p"][0], serde_json::json!([1, 2, 4, 7]));
    assert_eq!(v["monomial"], "x[2,5]*x[6,3]*x[7,6]");
}

#[test]
fn colored_input_infers_colors() {
    let v = parse(shadow_diagram_json("2^1,5,3,1,6,4^1").unwrap());
    assert_eq!(v["r"], 2);
    assert_eq!(v["degree"], 6);
    assert!(shadow_diagram_json("2,2").is_err());
}

#[test]
fn histogram_b9() {
    let v = parse(hilbert_histogram_json(9, 2).unwrap());
    assert_eq!(v["violations_k"], serde_json::json!([3]));
    assert_eq!(v["unimodal"], true);
    assert!(hilbert_histogram_json(41, 1).is_err());
    assert!(hilbert_histogram_json(3, 0).is_err());
}

#[test]
fn strata_small() {
    let v = parse(strata_json(3, 1).unwrap());
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"][1]["labels"][0]["label"], "((2,1))");
    assert_eq!(v["rows"][1]["labels"][0]["dim"], "2");
}
