use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn bocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bocal")).args(args).env_remove("BOCAL_SEED").output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = bocal(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn family_report_compares_cleanly() {
    let out = bocal(&["report", "family", "--s", "9", "--t", "2", "--compare-expected"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    for line in ["PASS LL = 7", "PASS pd S(10) = 2", "PASS pd S(11) = 3", "PASS gl_dim = inf", "PASS bound tri.dim tower = 5", "PASS bound ext.dim tower = 3", "PASS bound tri.dim aggregate = 6", "PASS bound ext.dim ll_tV = 7"] {
        assert!(text.contains(line), "missing {line:?}");
    }
    assert!(text.ends_with("overall: PASS\n"));
}

#[test]
fn reports_are_versioned_and_deterministic() {
    let (code, a) = json(&["report", "trivial-loop", "--k", "3", "--compare"]);
    assert_eq!(code, 0);
    assert_eq!(a["format"], "bocal-report/1");
    let first = bocal(&["report", "lambda-tilde", "--format", "json"]).stdout;
    let second = bocal(&["report", "lambda-tilde", "--format", "json"]).stdout;
    assert_eq!(first, second);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bocal")).args(["invariants", "semisimple", "--format", "json"]).env("BOCAL_SEED", "42").output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    let (_, d) = json(&["invariants", "semisimple"]);
    assert_eq!(d["seed"], 0);
}

#[test]
fn invariants_and_projective_dimensions() {
    let (code, v) = json(&["invariants", "a3tilde-hereditary"]);
    assert_eq!(code, 0);
    assert_eq!(v["runs"][0]["outputs"]["gl_dim"], "1");
    let (code, v) = json(&["pd", "trivial-loop", "S"]);
    assert_eq!(code, 0);
    assert_eq!(v["runs"][0]["outputs"]["pd"], "inf");
    assert_eq!(v["runs"][0]["certificates"][0]["certificate"]["kind"], "isomorphic");
    let (code, v) = json(&["pd", &data("dual_numbers.json"), &data("dual_numbers_regular.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["runs"][0]["outputs"]["pd"], "0");
}

#[test]
fn prime_fields_are_accepted() {
    let (code, v) = json(&["invariants", "family-c-listed", "--field", "101"]);
    assert_eq!(code, 0);
    assert_eq!(v["runs"][0]["outputs"]["field"], "F101");
    assert_eq!(v["runs"][0]["outputs"]["loewy_length"], 7);
}

#[test]
fn files_build_and_towers_check() {
    let (code, v) = json(&["build", &data("a3_tower.json")]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["runs"][0]["outputs"]["algebras"].as_array().unwrap().len(), 2);
    let (code, v) = json(&["tower-check", &format!("{}#0", data("a3_tower.json"))]);
    assert_eq!(code, 0, "{v}");
    let (code, _) = json(&["it-pipeline", &format!("{}#0", data("a3_tower.json")), "--tests", "all-projectives"]);
    assert_eq!(code, 0);
}

#[test]
fn skipping_the_middle_of_the_family_tower_is_reported_step_by_step() {
    let (code, v) = json(&["tower-check", "family", "--skip-middle"]);
    let verdicts = v["runs"][0]["verdicts"].as_array().unwrap();
    assert!(verdicts.iter().any(|x| x["name"].as_str().unwrap().starts_with("rad family-C")));
    assert_eq!(code, if verdicts.iter().all(|x| x["pass"] == true) { 0 } else { 1 });
}

#[test]
fn parse_errors_name_line_and_column() {
    let (code, v) = json(&["build", &data("broken.json")]);
    assert_eq!(code, 2);
    let e = &v["errors"][0];
    assert_eq!(e["kind"], "parse");
    assert_eq!((e["line"].as_u64(), e["column"].as_u64()), (Some(3), Some(20)));
}

#[test]
fn structured_errors_for_bad_requests() {
    let (code, v) = json(&["report", "family", "--s", "6"]);
    assert_eq!(code, 2);
    assert_eq!(v["errors"][0]["kind"], "parameter-out-of-range");
    let (code, v) = json(&["endo", "family", "P(1)+P(2')", "--j", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["errors"][0]["kind"], "unsupported-degree");
    let (code, v) = json(&["oracle", "extdim", "lambda-tilde"]);
    assert_eq!(code, 2);
    assert_eq!(v["errors"][0]["kind"], "oracle");
    let (code, _) = json(&["pd", "trivial-loop", "S(9)"]);
    assert_eq!(code, 2);
}

#[test]
fn oracle_commands() {
    let (code, v) = json(&["oracle", "extdim", "trivial-loop", "--degree", "1", "--with", "simples"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["oracle", "extdim", "trivial-loop", "--degree", "0", "--with", "simples"]);
    assert_eq!(code, 1);
    let open = v["runs"][0]["outputs"]["membership_open"].as_array().unwrap();
    assert_eq!(open[0]["result"], "refuted");
    let (code, _) = json(&["oracle", "wresol", "trivial-loop"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["oracle", "extdim", "trivial-loop", "--field", "3", "--census"]);
    assert_eq!(code, 0);
}

#[test]
fn endo_degree_zero_transports_a_nakayama_witness() {
    let (code, v) = json(&["endo", "family-a", "P(1)+P(3)", "--j", "0"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["runs"][0]["outputs"]["m"], 0);
}

#[test]
fn output_file_matches_standard_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = bocal(&["invariants", "semisimple", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), bocal(&["invariants", "semisimple", "--format", "json"]).stdout);
}
