use modinv::algebra::TensorElement;
use modinv::cli::{run, EXIT_OK, EXIT_USAGE};
use modinv::dickson;
use modinv::field::Field;
use modinv::groups::{act, gens_case, Case};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("modinv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn f3() -> Field {
    Field::prime(3).unwrap()
}

#[test]
fn dickson_index_zero_is_e2_squared() {
    let (code, out, _) = invoke(&["dickson", "--n", "2", "--p", "3", "--index", "0"]);
    assert_eq!(code, EXIT_OK);
    let u = TensorElement::from_json(out.trim()).unwrap();
    let e2 = dickson::dickson_e(&f3(), 2);
    assert_eq!(u, TensorElement::from_poly(e2.pow(2)));
}

#[test]
fn dickson_without_index_prints_e_n() {
    let (code, out, _) = invoke(&["dickson", "--n", "3", "--p", "3"]);
    assert_eq!(code, EXIT_OK);
    let u = TensorElement::from_json(out.trim()).unwrap();
    assert_eq!(u, TensorElement::from_poly(dickson::dickson_e(&f3(), 3)));
}

#[test]
fn extension_field_output_carries_the_modulus() {
    let (code, out, _) = invoke(&["dickson", "--n", "2", "--p", "3", "--e", "2", "--modulus", "1,0,1"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["field"]["modulus"], serde_json::json!([1, 0, 1]));
    let (code, _, err) = invoke(&["dickson", "--n", "2", "--p", "3", "--e", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("modulus"), "{err}");
}

#[test]
fn mui_forms() {
    let (code, out, _) = invoke(&["mui", "--n", "2", "--p", "3", "--I", "1", "--pretty"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "(2*x2^3)*dx1 + (x1^3)*dx2");
    let (code, out, _) = invoke(&["mui", "--n", "2", "--p", "3", "--I", "0", "--det-form", "--r", "1", "--pretty"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "(x2)*dx1 + (2*x1)*dx2");
    let (code, out, _) = invoke(&["mui", "--n", "2", "--p", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(TensorElement::from_json(out.trim()).unwrap(), TensorElement::top(&f3(), 2));
}

#[test]
fn opoly_routes_print_the_same_polynomial() {
    let (_, a, _) = invoke(&["opoly", "--n", "3", "--p", "3", "--i", "1"]);
    let (_, b, _) = invoke(&["opoly", "--n", "3", "--p", "3", "--i", "1", "--method", "product"]);
    assert_eq!(a, b);
    let (_, zero, _) = invoke(&["opoly", "--n", "3", "--p", "3", "--i", "2", "--pretty"]);
    assert_eq!(zero.trim(), "0");
}

#[test]
fn verify_reports_json_rows() {
    let (code, out, _) = invoke(&["verify", "--case", "f4_3", "--max-degree", "30", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 31);
    assert!(rows.iter().all(|r| r["match"] == true));
    assert_eq!(v["case"], "f4_3");
    assert!(v["invariance"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert_eq!(v["wilkerson"]["degree_product"], 5616);
}

#[test]
fn verify_text_summary() {
    let (code, out, _) = invoke(&["verify", "--case", "sl", "--n", "2", "--p", "3", "--max-degree", "12"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("all checks pass up to degree 12"), "{out}");
}

#[test]
fn order_by_enumeration() {
    let (code, out, _) = invoke(&["order", "--case", "e6_4", "--bfs"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "151632");
    let (code, out, _) = invoke(&["order", "--case", "sl", "--n", "3", "--p", "3", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order_formula"], "5616");
    assert_eq!(v["presentation"]["label"], "sl");
}

#[test]
fn fixed_dim_counts() {
    let (code, out, _) = invoke(&["fixed-dim", "--case", "sl", "--n", "2", "--p", "3", "--degree", "7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "1");
}

#[test]
fn act_applies_a_generator() {
    let dir = std::env::temp_dir().join(format!("modinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("u.json");
    let f = f3();
    let u = TensorElement::dx(&f, 2, &[1]);
    std::fs::write(&input, u.to_json()).unwrap();
    let (code, out, _) = invoke(&[
        "act",
        "--case",
        "sl",
        "--n",
        "2",
        "--p",
        "3",
        "--input",
        input.to_str().unwrap(),
        "--generator",
        "0",
    ]);
    assert_eq!(code, EXIT_OK);
    let pres = gens_case(&Case::sl(2, &f)).unwrap();
    let expected = act(&pres.generators[0], &u).unwrap();
    assert_eq!(TensorElement::from_json(out.trim()).unwrap(), expected);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("modinv-out-{}.json", std::process::id()));
    let (code, out, _) = invoke(&["dickson", "--n", "2", "--p", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let f5 = Field::prime(5).unwrap();
    assert_eq!(TensorElement::from_json(text.trim()).unwrap(), TensorElement::from_poly(dickson::dickson_e(&f5, 2)));
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["dickson", "--n", "2"],
        &["dickson", "--n", "2", "--p", "4"],
        &["verify", "--case", "nope"],
        &["verify", "--case", "sl", "--p", "3"],
        &["verify", "--case", "f4_3", "--p", "5"],
        &["mui", "--n", "2", "--p", "3", "--I", "0,x"],
        &["act", "--case", "f4_3", "--input", "/nonexistent.json", "--generator", "0"],
    ] {
        let (code, _, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--case", "g0", "--n", "3", "--p", "3", "--max-degree", "10", "--json"];
    assert_eq!(invoke(&args), invoke(&args));
}
