use fimhom_cli::corpus::corpus;
use fimhom_cli::error::CliError;
use fimhom_cli::io::{load_module, module_to_string, parse_module, save_module};
use fimhom_core::category::Truncation;
use fimhom_core::fi::FimObject;
use fimhom_core::module::{coregular, free_module};

fn t(p: &[usize]) -> Truncation {
    Truncation::new(p.to_vec())
}

fn usage_message(r: Result<impl std::fmt::Debug, CliError>) -> String {
    match r {
        Err(CliError::Usage(m)) => m,
        other => panic!("expected a usage error, got {other:?}"),
    }
}

#[test]
fn round_trip_is_byte_exact() {
    for tr in [t(&[3]), t(&[2, 2])] {
        for named in corpus(&tr, 2, 0).unwrap() {
            let text = module_to_string(&named.module);
            let back = parse_module(&text).unwrap();
            assert_eq!(back, named.module, "{}", named.name);
            assert_eq!(module_to_string(&back), text, "{}", named.name);
        }
    }
}

#[test]
fn save_then_load_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m1.json");
    let m = free_module(&FimObject(vec![1]), &t(&[3])).unwrap();
    save_module(&m, &path).unwrap();
    assert_eq!(load_module(&path).unwrap(), m);
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(names.len(), 1, "temporary file left behind");
}

fn free1_text() -> String {
    module_to_string(&free_module(&FimObject(vec![1]), &t(&[2])).unwrap())
}

#[test]
fn non_canonical_rational_is_rejected_with_hint() {
    let text = free1_text().replacen("\"1\"", "\"2/4\"", 1);
    let msg = usage_message(parse_module(&text));
    assert!(msg.contains("2/4") && msg.contains("1/2"), "{msg}");
    let text = free1_text().replacen("\"1\"", "\"3/3\"", 1);
    let msg = usage_message(parse_module(&text));
    assert!(msg.contains("write \"1\""), "{msg}");
}

#[test]
fn wrong_shape_names_the_field() {
    let mut json: serde_json::Value = serde_json::from_str(&free1_text()).unwrap();
    let matrix = &mut json["actions"][0]["matrix"];
    matrix.as_array_mut().unwrap().push(serde_json::json!(["0"]));
    let msg = usage_message(parse_module(&json.to_string()));
    assert!(msg.contains("actions[0].matrix") && msg.contains("expected shape"), "{msg}");
}

#[test]
fn dims_must_follow_canonical_order() {
    let mut json: serde_json::Value = serde_json::from_str(&free1_text()).unwrap();
    json["dims"].as_array_mut().unwrap().swap(0, 1);
    let msg = usage_message(parse_module(&json.to_string()));
    assert!(msg.contains("dims[0].obj"), "{msg}");
}

#[test]
fn missing_and_unknown_generators() {
    let mut json: serde_json::Value = serde_json::from_str(&free1_text()).unwrap();
    json["actions"].as_array_mut().unwrap().pop();
    let msg = usage_message(parse_module(&json.to_string()));
    assert!(msg.contains("missing action entry"), "{msg}");

    let mut json: serde_json::Value = serde_json::from_str(&free1_text()).unwrap();
    json["actions"][0]["gen"]["coord"] = serde_json::json!(2);
    let msg = usage_message(parse_module(&json.to_string()));
    assert!(msg.contains("coord 2 out of range"), "{msg}");

    let msg = usage_message(parse_module("{\"m\": 1}"));
    assert!(msg.contains("missing field"), "{msg}");
}

#[test]
fn syntax_errors_report_a_line() {
    let msg = usage_message(parse_module("{\n  \"m\": 1,\n  oops\n}"));
    assert!(msg.contains("line 3"), "{msg}");
}

#[test]
fn non_functor_is_an_invariant_error() {
    // Negating one transposition of M([2]) at [2] breaks (12)(12) = id.
    let m = coregular(&t(&[2]));
    let mut json: serde_json::Value = serde_json::from_str(&module_to_string(&m)).unwrap();
    let actions = json["actions"].as_array_mut().unwrap();
    let swap = actions
        .iter_mut()
        .find(|a| a["gen"]["kind"] == "transposition")
        .unwrap();
    let rows = swap["matrix"].as_array_mut().unwrap();
    for row in rows {
        for x in row.as_array_mut().unwrap() {
            if x == "1" {
                *x = serde_json::json!("2");
            }
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, json.to_string()).unwrap();
    match load_module(&path) {
        Err(CliError::Invariant(m)) => assert!(m.contains("not a functor"), "{m}"),
        other => panic!("expected an invariant error, got {other:?}"),
    }
}
