#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn eisen(args: &[&str]) -> Run {
    eisen_env(args, &[])
}

pub fn eisen_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_eisen"));
    cmd.args(args).env_remove("EISEN_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, stderr } = cmd.output().expect("binary runs");
    Run {
        code: status.code().expect("exited normally"),
        stdout: String::from_utf8(stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(stderr).expect("utf-8 stderr"),
    }
}

pub fn schema_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/report.schema.json")
}

/// Parses stdout as one JSON document and checks it against the shipped schema.
pub fn json_document(run: &Run) -> Value {
    let doc: Value = serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("not json ({e}): {}", run.stdout));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path()).unwrap()).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    if let Err(errors) = validator.validate(&doc) {
        let errors: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations: {errors:?}");
    }
    doc
}

pub fn quantity<'a>(doc: &'a Value, name: &str) -> &'a Value {
    doc["quantities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|q| q["quantity"] == name)
        .unwrap_or_else(|| panic!("no quantity {name}"))
}

pub fn decimal(v: &Value) -> f64 {
    v.as_str().expect("decimal string").parse().unwrap()
}
