//! End-to-end tests of the `hgflow` binary: documented examples, exit codes,
//! output determinism, and schema conformance of the JSON output.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

/// Minimal structural JSON-schema checker covering the subset used by the
/// shipped schemas: type, enum, properties/required/additionalProperties,
/// items, minItems/maxItems, oneOf.
mod validator {
    use serde_json::Value;

    fn type_matches(name: &str, v: &Value) -> bool {
        match name {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            "number" => v.is_number(),
            "integer" => {
                v.as_i64().is_some()
                    || v.as_u64().is_some()
                    || v.as_f64().map(|f| f.fract() == 0.0).unwrap_or(false)
            }
            other => panic!("unsupported type keyword {other}"),
        }
    }

    pub fn validate(schema: &Value, v: &Value, at: &str) -> Result<(), String> {
        if let Some(t) = schema.get("type") {
            let ok = match t {
                Value::String(name) => type_matches(name, v),
                Value::Array(names) => names
                    .iter()
                    .any(|n| type_matches(n.as_str().expect("type name"), v)),
                _ => panic!("bad type keyword"),
            };
            if !ok {
                return Err(format!("{at}: expected type {t}, got {v}"));
            }
        }
        if let Some(options) = schema.get("enum").and_then(Value::as_array) {
            if !options.contains(v) {
                return Err(format!("{at}: {v} not in enum {options:?}"));
            }
        }
        if let Some(branches) = schema.get("oneOf").and_then(Value::as_array) {
            let hits = branches
                .iter()
                .filter(|b| validate(b, v, at).is_ok())
                .count();
            if hits != 1 {
                return Err(format!("{at}: matched {hits} oneOf branches, want exactly 1"));
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            if let Some(obj) = v.as_object() {
                for (key, sub) in props {
                    if let Some(val) = obj.get(key) {
                        validate(sub, val, &format!("{at}/{key}"))?;
                    }
                }
                if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                    for key in obj.keys() {
                        if !props.contains_key(key) {
                            return Err(format!("{at}: unexpected property {key}"));
                        }
                    }
                }
            }
        }
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            if let Some(obj) = v.as_object() {
                for key in required {
                    let key = key.as_str().expect("required name");
                    if !obj.contains_key(key) {
                        return Err(format!("{at}: missing required property {key}"));
                    }
                }
            }
        }
        if let Some(arr) = v.as_array() {
            if let Some(item_schema) = schema.get("items") {
                for (i, item) in arr.iter().enumerate() {
                    validate(item_schema, item, &format!("{at}[{i}]"))?;
                }
            }
            if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
                if (arr.len() as u64) < min {
                    return Err(format!("{at}: fewer than {min} items"));
                }
            }
            if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
                if (arr.len() as u64) > max {
                    return Err(format!("{at}: more than {max} items"));
                }
            }
        }
        Ok(())
    }
}

fn report_schema() -> Value {
    serde_json::from_str(include_str!("../schemas/report.schema.json")).unwrap()
}

fn params_schema() -> Value {
    serde_json::from_str(include_str!("../schemas/params.schema.json")).unwrap()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hgflow_env(args: &[&str], envs: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hgflow"));
    cmd.args(args).env_remove("HGFLOW_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("spawn hgflow");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("stdout utf-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr utf-8"),
    }
}

fn hgflow(args: &[&str]) -> Run {
    hgflow_env(args, &[])
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hgflow-cli-test-{name}"));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn gauss_eval_matches_the_logarithm() {
    let run = hgflow(&[
        "eval", "--L", "2", "--N", "1", "--alpha", "1", "--beta", "1", "--gamma", "2", "--x",
        "0.3", "--degree", "80", "--format", "json",
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    let re = v["value"][0].as_f64().unwrap();
    let im = v["value"][1].as_f64().unwrap();
    let oracle = -(0.7f64.ln()) / 0.3;
    assert!((re - oracle).abs() <= 1e-12, "re = {re}, oracle = {oracle}");
    assert!(im.abs() <= 1e-12);
}

#[test]
fn resonant_gamma_is_rejected_with_exit_two() {
    let run = hgflow(&[
        "pde-check", "--alpha", "0.5", "0.3", "--beta", "0.2", "--gamma", "1.4", "-1",
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.is_empty());
    assert!(run.stderr.contains("nonpositive integer"), "stderr: {}", run.stderr);
}

#[test]
fn pinned_theorem_run_passes() {
    let run = hgflow(&[
        "verify-theorem", "--seed", "7", "--L", "3", "--N", "2", "--x", "0.15", "0.08",
        "--degree", "80", "--tol", "1e-8",
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.contains("result: PASS"), "stdout: {}", run.stdout);
}

#[test]
fn reruns_are_byte_identical_for_any_thread_cap() {
    let args = [
        "pfaffian-check", "--L", "3", "--N", "2", "--seed", "42", "--points", "6", "--degree",
        "30", "--format", "json",
    ];
    let base = hgflow(&args);
    assert_eq!(base.code, 0, "stderr: {}", base.stderr);
    for threads in ["1", "2", "6"] {
        let run = hgflow_env(&args, &[("HGFLOW_THREADS", threads)]);
        assert_eq!(run.stdout, base.stdout, "HGFLOW_THREADS={threads} changed the output");
        assert_eq!(run.code, 0);
    }
    let again = hgflow(&args);
    assert_eq!(again.stdout, base.stdout, "repeat run changed the output");

    let table = [
        "contiguity-check", "--L", "3", "--N", "2", "--seed", "5", "--all", "--format", "csv",
    ];
    let t1 = hgflow_env(&table, &[("HGFLOW_THREADS", "1")]);
    let t2 = hgflow_env(&table, &[("HGFLOW_THREADS", "8")]);
    assert_eq!(t1.code, 0, "stderr: {}", t1.stderr);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn json_output_validates_against_the_shipped_schema() {
    let schema = report_schema();
    let cases: Vec<Vec<&str>> = vec![
        vec!["eval", "--L", "2", "--N", "2", "--seed", "9", "--x", "0.1", "0.2", "--degree",
             "6", "--dump-coefficients"],
        vec!["eval", "--L", "2", "--N", "1", "--alpha", "0.5", "--beta", "0.4", "--gamma",
             "1.3", "--x", "0.2", "--integral", "--nodes", "24"],
        vec!["pde-check", "--L", "3", "--N", "2", "--seed", "11", "--degree", "10"],
        vec!["pfaffian-check", "--L", "2", "--N", "2", "--seed", "4", "--points", "3",
             "--degree", "20"],
        vec!["hamiltonian-check", "--L", "2", "--N", "2", "--seed", "5", "--points", "2"],
        vec!["lax-check", "--L", "3", "--N", "1", "--seed", "6", "--z-samples", "5"],
        vec!["verify-theorem", "--L", "2", "--N", "1", "--seed", "8", "--degree", "40"],
        vec!["contiguity-check", "--L", "2", "--N", "2", "--seed", "3", "--degree", "12"],
    ];
    for mut args in cases {
        args.push("--format");
        args.push("json");
        let run = hgflow(&args);
        assert_eq!(run.code, 0, "args {args:?}, stderr: {}", run.stderr);
        let v: Value = serde_json::from_str(&run.stdout)
            .unwrap_or_else(|e| panic!("bad json from {args:?}: {e}"));
        validator::validate(&schema, &v, "$")
            .unwrap_or_else(|e| panic!("schema violation from {args:?}: {e}"));
    }
}

#[test]
fn continuation_output_validates_and_has_the_documented_columns() {
    let path = scratch_file(
        "path.json",
        r#"{"waypoints": [[[0.03,0.0],[0.05,0.0]], [[0.3,0.0],[0.4,0.0]]]}"#,
    );
    let path = path.to_str().unwrap();
    let base = [
        "continue", "--L", "2", "--N", "2", "--seed", "13", "--path", path, "--degree", "40",
        "--tol", "1e-8", "--samples", "3",
    ];

    let mut json_args = base.to_vec();
    json_args.extend(["--format", "json"]);
    let run = hgflow(&json_args);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    validator::validate(&report_schema(), &v, "$").unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 4);

    let mut csv_args = base.to_vec();
    csv_args.extend(["--format", "csv"]);
    let run = hgflow(&csv_args);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let mut lines = run.stdout.lines();
    // Rank is N(L-1)+1 = 3, so three solution components follow the point.
    assert_eq!(
        lines.next().unwrap(),
        "s,x_1.re,x_1.im,x_2.re,x_2.im,y_1.re,y_1.im,y_2.re,y_2.im,y_3.re,y_3.im"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row.split(',').count(), 11);
    }
}

#[test]
fn coefficient_dump_lists_every_multi_index() {
    let run = hgflow(&[
        "eval", "--L", "2", "--N", "2", "--seed", "9", "--x", "0.1", "0.2", "--degree", "4",
        "--dump-coefficients", "--format", "csv",
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let mut lines = run.stdout.lines();
    assert_eq!(lines.next().unwrap(), "m_1,m_2,re,im");
    // Multi-indices with |m| <= 4 in two variables: C(4+2,2) = 15.
    assert_eq!(lines.count(), 15);
}

#[test]
fn parameter_files_validate_and_feed_every_form() {
    let sp = hgflow::params::random_params(21, 3, 2, true).unwrap();
    let sys_text = hgflow::params::system_params_to_json(&sp);
    let hp = hgflow::params::map_system_to_hg(&sp).unwrap();
    let series_text = hgflow::params::hg_params_to_json(&hp);

    let schema = params_schema();
    for text in [&sys_text, &series_text] {
        let v: Value = serde_json::from_str(text).unwrap();
        validator::validate(&schema, &v, "$").unwrap();
    }

    let sys_file = scratch_file("sys-params.json", &sys_text);
    let series_file = scratch_file("series-params.json", &series_text);

    // The spectral file drives the reducible-stratum commands directly ...
    let run = hgflow(&[
        "verify-theorem", "--params", sys_file.to_str().unwrap(), "--degree", "40",
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);

    // ... and the series file reaches them through the inverse dictionary.
    let run = hgflow(&[
        "lax-check", "--params", series_file.to_str().unwrap(), "--z-samples", "4",
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);

    let run = hgflow(&["pde-check", "--params", series_file.to_str().unwrap(), "--degree", "8"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
}

#[test]
fn failing_checks_exit_one_with_the_report_on_stdout() {
    let run = hgflow(&[
        "contiguity-check", "--L", "2", "--N", "1", "--seed", "3", "--tol", "1e-30",
    ]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("FAIL"), "stdout: {}", run.stdout);
}

#[test]
fn bad_inputs_exit_two() {
    // Out-of-range relation slot.
    let run = hgflow(&[
        "contiguity-check", "--L", "2", "--N", "1", "--relation", "shift-alpha-up", "--slot",
        "7",
    ]);
    assert_eq!(run.code, 2, "stderr: {}", run.stderr);

    // Missing parameter file.
    let run = hgflow(&["pde-check", "--params", "/nonexistent/params.json"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("cannot read"));

    // Wrong number of coordinates.
    let run = hgflow(&["eval", "--L", "2", "--N", "1", "--seed", "0", "--x", "0.1", "0.2"]);
    assert_eq!(run.code, 2);

    // Non-reducible spectral parameters for a reducible-stratum command.
    let text = r#"{"L":2,"N":1,"e":[[0.1,0],[0.4,0]],"kappa":[[0.3,0],[0.2,0]],"theta":[[0.1,0],[0.4,0]]}"#;
    let file = scratch_file("nonreducible.json", text);
    let run = hgflow(&["verify-theorem", "--params", file.to_str().unwrap()]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("not reducible"), "stderr: {}", run.stderr);

    // Unknown flags are rejected by the parser.
    let run = hgflow(&["eval", "--no-such-flag"]);
    assert_eq!(run.code, 2);
}

#[test]
fn help_documents_the_complex_token_syntax() {
    let run = hgflow(&["--help"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("re+imj"));
    assert!(run.stdout.contains("HGFLOW_THREADS"));
}
