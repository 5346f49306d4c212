//! Binary-level tests: exit codes, byte stability, the seed environment
//! override, and conformance of every JSON output kind to the shipped
//! schema (checked with a small validator covering the subset of JSON
//! Schema the file uses).

use std::process::{Command, Output};

use serde_json::Value;

fn nilcomm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcomm"))
        .args(args)
        .env_remove("NILCOMM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

// ---------------------------------------------------------------------
// Minimal JSON Schema validator: $ref/#$defs, oneOf, allOf, type,
// properties, required, items, enum, const, minimum.
// ---------------------------------------------------------------------

fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let path = reference
        .strip_prefix("#/")
        .unwrap_or_else(|| panic!("unsupported $ref {reference}"));
    let mut node = root;
    for key in path.split('/') {
        node = &node[key];
    }
    node
}

fn type_matches(ty: &str, value: &Value) -> bool {
    match ty {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        other => panic!("unsupported type {other}"),
    }
}

fn validate(root: &Value, schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        validate(root, resolve(root, reference), value, path, errors);
        return;
    }
    if let Some(branches) = schema.get("oneOf").and_then(Value::as_array) {
        let matching = branches
            .iter()
            .filter(|branch| {
                let mut sub = Vec::new();
                validate(root, branch, value, path, &mut sub);
                sub.is_empty()
            })
            .count();
        if matching != 1 {
            errors.push(format!("{path}: {matching} oneOf branches matched"));
        }
        return;
    }
    if let Some(branches) = schema.get("allOf").and_then(Value::as_array) {
        for branch in branches {
            validate(root, branch, value, path, errors);
        }
        return;
    }
    if let Some(expected) = schema.get("const") {
        if expected != value {
            errors.push(format!("{path}: expected const {expected}, got {value}"));
        }
        return;
    }
    if let Some(choices) = schema.get("enum").and_then(Value::as_array) {
        if !choices.contains(value) {
            errors.push(format!("{path}: {value} not in enum"));
        }
        return;
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        if !type_matches(ty, value) {
            errors.push(format!("{path}: expected {ty}, got {value}"));
            return;
        }
    }
    if let Some(minimum) = schema.get("minimum").and_then(Value::as_i64) {
        if let Some(actual) = value.as_i64().or_else(|| value.as_u64().map(|u| u as i64)) {
            if actual < minimum {
                errors.push(format!("{path}: {actual} below minimum {minimum}"));
            }
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required {
            let key = key.as_str().expect("required entries are strings");
            if value.get(key).is_none() {
                errors.push(format!("{path}: missing required key {key}"));
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        for (key, sub) in props {
            if let Some(child) = value.get(key) {
                validate(root, sub, child, &format!("{path}/{key}"), errors);
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(elements) = value.as_array() {
            for (i, child) in elements.iter().enumerate() {
                validate(root, items, child, &format!("{path}[{i}]"), errors);
            }
        }
    }
}

fn schema_root() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/nilcomm.v1.schema.json");
    let text = std::fs::read_to_string(path).expect("schema ships with the crate");
    serde_json::from_str(&text).expect("schema is valid json")
}

fn assert_valid(root: &Value, document: &str, context: &str) {
    let value: Value = serde_json::from_str(document).expect("valid json output");
    let mut errors = Vec::new();
    validate(root, root, &value, "$", &mut errors);
    assert!(errors.is_empty(), "{context}: {errors:?}");
}

#[test]
fn every_json_kind_validates_against_the_schema() {
    let root = schema_root();
    for args in [
        vec!["info", "4^2,3^2,2", "--format", "json"],
        vec!["dmap", "4,3,2,1", "--format", "json", "--samples", "5"],
        vec!["verify", "idempotent", "4", "--format", "json", "--samples", "5"],
        vec!["verify", "lemma1", "5", "--format", "json", "--samples", "3"],
        vec!["verify", "gorenstein", "2,1", "--format", "json", "--samples", "3"],
        vec!["verify", "macaulay", "3", "--format", "json", "--samples", "3"],
        vec!["table", "4", "--format", "json", "--samples", "5"],
    ] {
        let out = nilcomm(&args);
        assert_eq!(exit_code(&out), 0, "{args:?}: {}", stdout(&out));
        assert_valid(&root, &stdout(&out), &format!("{args:?}"));
    }
}

#[test]
fn validator_rejects_corrupted_documents() {
    let root = schema_root();
    let out = nilcomm(&["info", "3,1", "--format", "json"]);
    let mut value: Value = serde_json::from_str(&stdout(&out)).unwrap();
    value["schema"] = Value::String("nilcomm.v0".into());
    let mut errors = Vec::new();
    validate(&root, &root, &value, "$", &mut errors);
    assert!(!errors.is_empty(), "wrong schema version must be rejected");
}

#[test]
fn exit_codes() {
    // 0: clean run.
    assert_eq!(exit_code(&nilcomm(&["info", "4,3,2,1"])), 0);
    // 1: parse errors and usage errors.
    let out = nilcomm(&["info", "3,4"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("weakly decreasing"));
    assert_eq!(exit_code(&nilcomm(&["info", "4,x"])), 1);
    assert_eq!(exit_code(&nilcomm(&["no-such-command"])), 1);
    assert_eq!(exit_code(&nilcomm(&["table", "4", "--prime", "15"])), 1);
    // 2: honest genericity failure at a tiny prime (flags raised).
    let out = nilcomm(&["dmap", "2,2", "--prime", "2", "--samples", "2", "--seed", "0"]);
    assert_eq!(exit_code(&out), 2, "{}", stdout(&out));
    assert!(stdout(&out).contains("closed-form-mismatch"));
}

#[test]
fn byte_stable_reruns_and_jobs_independence() {
    let base = ["table", "12", "--format", "csv", "--samples", "3"];
    let first = stdout(&nilcomm(&base));
    let second = stdout(&nilcomm(&base));
    assert_eq!(first, second, "reruns are byte-identical");
    let serial = stdout(&nilcomm(&["table", "12", "--format", "csv", "--samples", "3", "--jobs", "1"]));
    let wide = stdout(&nilcomm(&["table", "12", "--format", "csv", "--samples", "3", "--jobs", "4"]));
    assert_eq!(serial, wide, "thread count must not affect output");
    assert_eq!(first, serial);
}

#[test]
fn seed_environment_override() {
    let flagged = stdout(&nilcomm(&["table", "6", "--format", "csv", "--seed", "9"]));
    let via_env = Command::new(env!("CARGO_BIN_EXE_nilcomm"))
        .args(["table", "6", "--format", "csv"])
        .env("NILCOMM_SEED", "9")
        .output()
        .expect("binary runs");
    assert_eq!(flagged, stdout(&via_env), "env seeds the default");
    // An explicit flag wins over the environment.
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_nilcomm"))
        .args(["table", "6", "--format", "csv", "--seed", "3"])
        .env("NILCOMM_SEED", "9")
        .output()
        .expect("binary runs");
    let direct = stdout(&nilcomm(&["table", "6", "--format", "csv", "--seed", "3"]));
    assert_eq!(stdout(&flag_wins), direct);
}

#[test]
fn table_csv_shape() {
    let out = nilcomm(&["table", "4", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "lambda,n,r,oblak_index,d_estimated,d_closed_form,stable,flags");
    assert_eq!(lines.len(), 6, "header plus p(4) = 5 rows");
    // Partitions with commas are quoted by the writer.
    assert!(lines[2].starts_with("\"3,1\""), "{}", lines[2]);
}

#[test]
fn verify_idempotent_12_covers_77_partitions() {
    // Independent count: the bounded-part recurrence gives p(12) = 77.
    fn partition_count(n: usize) -> u64 {
        let mut table = vec![vec![0u64; n + 1]; n + 1];
        for cell in table[0].iter_mut() {
            *cell = 1;
        }
        for m in 1..=n {
            for max in 1..=n {
                table[m][max] =
                    table[m][max - 1] + if m >= max { table[m - max][max] } else { 0 };
            }
        }
        table[n][n]
    }
    assert_eq!(partition_count(12), 77);
    let out = nilcomm(&["verify", "idempotent", "12", "--format", "json", "--samples", "5"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let value: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["sweep"]["reports"].as_array().unwrap().len(), 77);
    assert_eq!(value["sweep"]["all_idempotent"], Value::Bool(true));
}

#[test]
fn lemma1_figure_example_via_cli() {
    let out = nilcomm(&["verify", "lemma1", "4^2,3^2,2,1^2", "--samples", "10"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("pass 4,4,3,3,2,1,1"), "{text}");
    assert!(text.contains("cocyclic=true"), "{text}");
}

#[test]
fn gorenstein_staircase_via_cli() {
    let out = nilcomm(&["verify", "gorenstein", "4,3,2,1", "--samples", "5"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("dim=n 5/5"), "{text}");
    assert!(text.contains("socle=1 5/5"), "{text}");
}
