use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

fn symquad(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_symquad"))
        .args(args)
        .env_remove("SYMQUAD_WORKERS")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn schema() -> JSONSchema {
    let text = include_str!("../schema/output.schema.json");
    let v: Value = serde_json::from_str(text).unwrap();
    JSONSchema::compile(&v).expect("schema compiles")
}

fn json_of(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = symquad(&full);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

const COMMANDS: &[&[&str]] = &[
    &["equations", "--r", "3"],
    &["classify", "--r", "2", "--matrix", "[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]"],
    &["normal-form", "--r", "2", "--matrix", "[[\"1/2\",1,0,0],[1,2,0,0],[0,0,0,0],[0,0,0,0]]"],
    &["tangent-cone", "--r", "3", "--k", "1"],
    &["secant", "--n", "3", "--h", "2", "--k", "1"],
    &["secant", "--n", "4", "--h", "2"],
    &["sample", "--r", "3", "--trials", "20", "--seed", "7"],
    &["verify-x4"],
    &["rulings"],
    &["chambers", "--space", "S6"],
    &["chambers", "--gens", "1,0;1,1;0,1"],
    &["cones", "--space", "K5"],
    &["cones", "--space", "S4"],
    &["fano", "--r", "9"],
    &["schubert", "--r", "3"],
    &["schubert", "--r", "3", "--product", "s1*s1*s2 - s[2,1]"],
    &["chern", "--r", "4"],
    &["moduli-dim", "--r", "5"],
    &["intersect", "--preset", "nine-lines"],
    &["intersect", "--a", "2", "--b", "1", "--n", "5", "--segre", "1,-9,51", "--htop", "1", "--m", "2"],
    &["reproduce", "--anchor", "secant"],
];

#[test]
fn every_command_matches_the_schema() {
    let schema = schema();
    for args in COMMANDS {
        let v = json_of(args);
        assert_eq!(v["schema"], "1");
        let msgs: Vec<String> = match schema.validate(&v) {
            Ok(()) => continue,
            Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
        };
        panic!("{args:?} violates the schema: {msgs:?}");
    }
}

#[test]
fn schema_rejects_malformed_output() {
    let schema = schema();
    let mut v = json_of(&["fano", "--r", "3"]);
    assert!(schema.is_valid(&v));
    v["result"]["type"] = Value::from("ample-ish");
    assert!(!schema.is_valid(&v));
    v["schema"] = Value::from("2");
    assert!(!schema.is_valid(&v));
}

#[test]
fn documented_examples() {
    let v = json_of(&["equations", "--r", "2"]);
    assert_eq!(v["result"]["equations"].as_array().unwrap().len(), 5);

    let (code, out, _) = symquad(&["reproduce", "--anchor", "nine-lines"]);
    assert_eq!(code, 0);
    assert!(out.contains("pass") && out.contains("92"), "{out}");

    let (code, out, _) = symquad(&["fano", "--r", "7"]);
    assert_eq!((code, out.trim()), (0, "weak-Fano"));
}

#[test]
fn exit_codes() {
    let (code, _, err) = symquad(&["no-such-command"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    assert_eq!(symquad(&[]).0, 2);
    assert_eq!(symquad(&["equations"]).0, 2);
    assert_eq!(symquad(&["equations", "--r", "two"]).0, 2);
    assert_eq!(symquad(&["fano", "--r", "1"]).0, 2);
    assert_eq!(symquad(&["fano", "--r", "3", "--format", "svg"]).0, 2);
    assert_eq!(symquad(&["classify", "--r", "2", "--matrix", "[[1,2],[3,4]]"]).0, 2);
    assert_eq!(symquad(&["classify", "--r", "2", "--matrix", "not json"]).0, 2);
    assert_eq!(symquad(&["intersect", "--preset", "ten-lines"]).0, 2);
    assert_eq!(symquad(&["intersect", "--a", "2"]).0, 2);
    assert_eq!(symquad(&["reproduce"]).0, 2);
    assert_eq!(symquad(&["reproduce", "--anchor", "bogus"]).0, 2);
    assert_eq!(symquad(&["schubert", "--r", "3", "--product", "s4"]).0, 2);
    assert_eq!(symquad(&["--help"]).0, 0);
}

#[test]
fn worker_env_is_validated() {
    let run = |val: &str| {
        Command::new(env!("CARGO_BIN_EXE_symquad"))
            .args(["sample", "--r", "2", "--trials", "30", "--format", "json"])
            .env("SYMQUAD_WORKERS", val)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
    assert_eq!(run("0").status.code(), Some(2));
}

#[test]
fn out_file_holds_the_json_envelope() {
    let dir = std::env::temp_dir().join(format!("symquad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chern.json");
    let (code, text, _) = symquad(&["chern", "--r", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("c1(T) = 4*s[1]"), "{text}");
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved, json_of(&["chern", "--r", "3"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn svg_cross_sections() {
    for space in ["S4", "S6", "K3"] {
        let (code, out, _) = symquad(&["chambers", "--space", space, "--format", "svg"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("<svg") && out.trim_end().ends_with("</svg>"), "{space}");
    }
}

#[test]
fn text_and_json_agree_on_values() {
    let v = json_of(&["intersect", "--preset", "chasles"]);
    assert_eq!(v["result"]["value"], "3264");
    let (_, text, _) = symquad(&["intersect", "--preset", "chasles"]);
    assert_eq!(text.trim(), "3264");

    let v = json_of(&["schubert", "--r", "3", "--product", "s1*s1*s1*s1*s1*s1"]);
    assert_eq!(v["result"]["degree"], "16");
    assert_eq!(v["result"]["value"]["s[3,2,1]"], "16");
}
