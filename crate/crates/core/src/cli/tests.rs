use super::*;
use crate::exactnum::Rational;
use crate::heckecore::{formula_y, HeckeSymmetryRecord};

fn go(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["hecke3"];
    full.extend_from_slice(args);
    let out = run(full);
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, v)
}

#[test]
fn construct_type1_entry() {
    let (code, v) = go(&["--field", "Q", "construct", "--type", "1", "--q", "2"]);
    assert_eq!(code, EXIT_OK);
    // R(x2x1) = q x1x2: row (0,1), column (1,0)
    assert_eq!(v["R"][1][3], "2");
    assert_eq!(v["q"], "2");
}

#[test]
fn verify_flip_passes() {
    let flip = HeckeSymmetry::<Rational>::flip(&Rationals).to_record();
    let json = serde_json::to_string(&flip).unwrap();
    let (code, v) = go(&["verify", "--matrix", &json, "--bases", "2"]);
    assert_eq!(code, EXIT_OK, "{v}");
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names.first(), Some(&"braid"));
    assert_eq!(names.last(), Some(&"membership"));
}

#[test]
fn classify_perturbed_matrix_is_check_failure() {
    let d = canonical(&Rationals, TypeLabel::Type1, Some(Rationals.from_i64(3)))
        .unwrap()
        .with_g_entry(0, 1, Rationals.from_i64(2));
    let r = &Matrix::identity(&Rationals, 9).scale(d.q()) - &formula_y(&d);
    let rec = json!({ "R": MatrixRecord::from_matrix(&r) });
    let (code, v) = go(&["classify", "--matrix", &rec.to_string()]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert_eq!(v["error"]["kind"], "NotHeckeSym0");
    assert!(v["reports"].as_array().unwrap().iter().any(|r| r["passed"] == false));
}

#[test]
fn constraint_violation_in_data_is_invalid() {
    let d = canonical(&Rationals, TypeLabel::Type1, Some(Rationals.from_i64(3)))
        .unwrap()
        .with_g_entry(0, 1, Rationals.from_i64(2));
    let json = serde_json::to_string(&d.to_record()).unwrap();
    let (code, v) = go(&["construct", "--data", &json]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["error"]["kind"], "InvalidConstraint");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(go(&["verify"]).0, EXIT_INVALID);
    assert_eq!(go(&["bogus"]).0, EXIT_INVALID);
    assert_eq!(go(&["--field", "Fp:9", "table"]).0, EXIT_INVALID);
    assert_eq!(go(&["construct", "--type", "9"]).0, EXIT_INVALID);
    assert_eq!(go(&["construct", "--type", "1"]).0, EXIT_INVALID);
}

#[test]
fn field_tag_mismatch_exit_two() {
    let (_, v) = go(&["construct", "--type", "2", "--q", "3"]);
    let (code, out) = go(&["--field", "Fp:7", "classify", "--matrix", &v.to_string()]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(out["error"]["kind"], "FieldMismatch");
    // without --field the record's own tag is used
    assert_eq!(go(&["classify", "--matrix", &v.to_string()]).0, EXIT_OK);
}

#[test]
fn stated_q_must_match() {
    let (_, mut v) = go(&["construct", "--type", "1", "--q", "2"]);
    v["q"] = json!("5");
    let (code, out) = go(&["rmatrix", "--matrix", &v.to_string()]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(out["error"]["kind"], "InvalidQ");
}

#[test]
fn construct_output_roundtrips() {
    for args in [vec!["construct", "--type", "5"], vec!["--field", "Fp:11", "construct", "--type", "1", "--q", "4"]] {
        let (code, v) = go(&args);
        assert_eq!(code, EXIT_OK);
        let rec: HeckeSymmetryRecord = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(serde_json::to_value(&rec).unwrap(), v);
    }
}

#[test]
fn classify_record_roundtrips() {
    let (_, v) = go(&["construct", "--type", "6"]);
    let (code, c) = go(&["classify", "--matrix", &v.to_string()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(c["type"], "Type6");
    let rec: ClassificationRecord = serde_json::from_value(c.clone()).unwrap();
    assert_eq!(serde_json::to_value(&rec).unwrap(), c);
    let keys: Vec<&String> = c.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["type", "q", "rank_g", "rank_restricted", "normalized_F"]);
}

#[test]
fn carrier_of_type7_is_abelian() {
    let (_, v) = go(&["construct", "--type", "7"]);
    let (code, c) = go(&["carrier", "--matrix", &v.to_string()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(c["dim"], 2);
    assert_eq!(c["frobenius"]["status"], "not_frobenius");
    assert_eq!(c["fingerprint"]["center"], 2);
}

#[test]
fn bare_matrix_input() {
    let (_, v) = go(&["construct", "--type", "3"]);
    let (code, c) = go(&["classify", "--matrix", &v["R"].to_string()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(c["type"], "Type3");
}

#[test]
fn fuzz_small_run() {
    let (code, v) = go(&["fuzz", "--trials", "4", "--seed", "1", "--strategy", "B"]);
    assert_eq!(code, EXIT_OK, "{v}");
    assert_eq!(v["failed_trials"], 0);
    let (code, v) = go(&["fuzz", "--trials", "4", "--adversarial"]);
    assert_eq!(code, EXIT_OK, "{v}");
}
