use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn parahoric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parahoric"))
        .args(args)
        .env_remove("PARAHORIC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn with_cache(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parahoric"))
        .args(args)
        .env("PARAHORIC_CACHE_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON")
}

fn assert_schema(name: &str, value: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{value:#}");
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn weyl_examples() {
    assert_eq!(stdout(&parahoric(&["weyl", "demazure", "A1", "--word", "0,1,1"])).trim(), "s0*s1");
    assert_eq!(stdout(&parahoric(&["weyl", "length", "A1:sc", "--elt", "t[1]"])).trim(), "2");
    assert_eq!(stdout(&parahoric(&["weyl", "leq", "A1", "--u", "s0", "--w", "s0,1"])).trim(), "true");
    assert_eq!(stdout(&parahoric(&["weyl", "leq", "A1", "--u", "s0,1", "--w", "s0"])).trim(), "false");
    assert_eq!(
        stdout(&parahoric(&["weyl", "demazure", "A1", "--elts", "s0", "s1", "s1"])).trim(),
        "s0*s1"
    );
}

#[test]
fn weyl_reduce_json() {
    let v = json(&parahoric(&["weyl", "reduce", "A2", "--elt", "t[1,-1]", "--json"]));
    assert_schema("weyl_element.schema.json", &v);
    assert_eq!(v["length"], 6);
    let v = json(&parahoric(&["weyl", "reduce", "A1:ad", "--elt", "t[1]", "--json"]));
    assert_eq!(v["length"], 1);
    assert_ne!(v["omega"], "t[0]");
}

#[test]
fn multiply_special_translations() {
    let v = json(&parahoric(&[
        "hecke", "multiply", "A1", "--facet", "1", "--p", "3", "--w1", "t[-1]", "--w2", "t[-1]",
    ]));
    assert_schema("product.schema.json", &v);
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["rep"], "t[-2]");
    assert_eq!(terms[0]["coeff"], 1);
    assert!(v.get("witnesses").is_none());
}

#[test]
fn multiply_text_shows_both_bases() {
    let out = stdout(&parahoric(&[
        "hecke", "multiply", "A1", "--facet", "1", "--p", "3", "--w1", "t[-1]", "--w2", "t[-1]", "--text",
    ]));
    assert!(out.contains("phi:       φ_{t[-2]}"), "{out}");
    assert!(out.contains("indicator: 1_{t[0]} + 1_{t[-1]} + 1_{t[-2]}"), "{out}");
}

#[test]
fn pointcount_of_projective_line() {
    assert_eq!(
        stdout(&parahoric(&["hecke", "pointcount", "A1", "--facet", "", "--w", "s0"])).trim(),
        "1 + q"
    );
    let v = json(&parahoric(&["hecke", "pointcount", "A1", "--facet", "", "--w", "s0", "--json"]));
    assert_schema("pointcount.schema.json", &v);
    assert_eq!(v["coefficients"], serde_json::json!([1, 1]));
}

#[test]
fn basis_change_of_unit() {
    let v = json(&parahoric(&[
        "hecke", "basis", "A1", "--facet", "", "--p", "3", "--w", "e", "--to", "indicator",
    ]));
    assert_schema("hecke_element.schema.json", &v);
    assert_eq!(v["basis"], "indicator");
    assert_eq!(v["terms"], serde_json::json!([{ "rep": "t[0]", "coeff": 1 }]));
}

#[test]
fn basis_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let ind = dir.path().join("ind.json");
    let out = stdout(&parahoric(&[
        "hecke", "basis", "A2", "--p", "5", "--w", "t[1,1]", "--to", "indicator",
    ]));
    fs::write(&ind, &out).unwrap();
    let v = json(&parahoric(&[
        "hecke", "basis", "A2", "--p", "5", "--input", ind.to_str().unwrap(), "--to", "phi",
    ]));
    assert_schema("hecke_element.schema.json", &v);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn witness_replay_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    fs::write(
        &a,
        stdout(&parahoric(&["hecke", "basis", "A2", "--p", "3", "--w", "s0*s1", "--to", "indicator"])),
    )
    .unwrap();
    let a = a.to_str().unwrap();
    let product = parahoric(&["hecke", "multiply", "A2", "--p", "3", "--a", a, "--w2", "s2*s0", "--witness"]);
    let v = json(&product);
    assert_schema("product.schema.json", &v);
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
    let doc = dir.path().join("product.json");
    fs::write(&doc, &product.stdout).unwrap();
    let replay = parahoric(&["hecke", "replay", "--witness", doc.to_str().unwrap()]);
    assert_eq!(stdout(&replay), stdout(&product));

    let tampered = String::from_utf8(product.stdout.clone())
        .unwrap()
        .replacen("\"demazure\": \"", "\"demazure\": \"s0*", 1);
    fs::write(&doc, tampered).unwrap();
    assert_eq!(code(&parahoric(&["hecke", "replay", "--witness", doc.to_str().unwrap()])), 4);
}

#[test]
fn satake_examples() {
    let v = json(&parahoric(&["satake", "A1", "--facet", "1", "--levi", "", "--p", "2", "--w", "t[-1]"]));
    assert_schema("satake.schema.json", &v);
    assert_eq!(v["display"], "e^{t[-1]}");
    assert_eq!(v["has_levi_point"], true);

    // the closed component of s1 at Iwahori level misses the torus
    let v = json(&parahoric(&["satake", "A1", "--facet", "", "--levi", "", "--p", "2", "--w", "s1"]));
    assert_schema("satake.schema.json", &v);
    assert_eq!(v["has_levi_point"], false);
    assert_eq!(v["image"], serde_json::json!([]));
    assert_eq!(v["display"], "0");
}

#[test]
fn satake_special_agrees_with_general() {
    for w in ["t[-1,-1]", "t[-2,-1]", "t[1,0]*s1", "s0*s1*s2*s0"] {
        let args = ["satake", "A2", "--facet", "1,2", "--p", "3", "--w", w];
        let general = json(&parahoric(&args));
        let mut special_args = args.to_vec();
        special_args.push("--special");
        let special = json(&parahoric(&special_args));
        assert_schema("satake.schema.json", &special);
        assert_eq!(general["image"], special["image"], "{w}");
        assert_eq!(general["closed_component"], special["closed_component"], "{w}");
    }
}

#[test]
fn lambda_minus_table() {
    let out = stdout(&parahoric(&["satake", "--list-lambda-minus", "A2", "--facet", "1,2", "--cap", "8"]));
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 5, "{out}");
    assert!(rows[0].starts_with("[0, 0]"));
    let v = json(&parahoric(&[
        "satake", "--list-lambda-minus", "A2", "--facet", "1,2", "--cap", "8", "--json",
    ]));
    assert_schema("lambda_minus.schema.json", &v);
    let lengths: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["length"].as_u64().unwrap()).collect();
    assert_eq!(lengths, vec![0, 4, 6, 6, 8]);
}

#[test]
fn exit_codes() {
    // parse errors
    assert_eq!(code(&parahoric(&["weyl", "length", "A1", "--elt", "x[1]"])), 2);
    assert_eq!(code(&parahoric(&["weyl", "length", "Q3", "--elt", "e"])), 2);
    assert_eq!(code(&parahoric(&["weyl", "frobnicate"])), 2);
    assert_eq!(code(&parahoric(&["weyl", "demazure", "A1", "--word", "0,5"])), 2);
    // facet and prime problems
    assert_eq!(code(&parahoric(&["hecke", "multiply", "A1", "--facet", "9", "--p", "3", "--w1", "e", "--w2", "e"])), 2);
    assert_eq!(code(&parahoric(&["hecke", "multiply", "A1", "--facet", "0,1", "--p", "3", "--w1", "e", "--w2", "e"])), 2);
    assert_eq!(code(&parahoric(&["hecke", "multiply", "A1", "--p", "4", "--w1", "e", "--w2", "e"])), 2);
    // caps
    assert_eq!(code(&parahoric(&["hecke", "pointcount", "A2", "--w", "t[5,5]", "--interval-cap", "10"])), 3);
    // --special off a special vertex
    assert_eq!(code(&parahoric(&["satake", "A1", "--facet", "", "--p", "2", "--w", "s1", "--special"])), 4);
    assert_eq!(code(&parahoric(&["satake", "A2", "--facet", "1", "--p", "2", "--w", "e", "--special"])), 4);
    // cache commands without a directory
    assert_eq!(code(&parahoric(&["cache", "stats"])), 4);
    // unreadable input
    assert_eq!(
        code(&parahoric(&["hecke", "basis", "A1", "--p", "2", "--input", "/nonexistent/x.json", "--to", "phi"])),
        5
    );
}

#[test]
fn facet_mismatch_between_operands() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    fs::write(&a, stdout(&parahoric(&["hecke", "basis", "A1", "--facet", "1", "--p", "3", "--w", "e", "--to", "phi"]))).unwrap();
    let out = parahoric(&["hecke", "multiply", "A1", "--facet", "", "--p", "3", "--a", a.to_str().unwrap(), "--w2", "e"]);
    assert_eq!(code(&out), 2);
    let out = parahoric(&["hecke", "multiply", "A1", "--facet", "1", "--p", "5", "--a", a.to_str().unwrap(), "--w2", "e"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("session.json");
    let config = serde_json::json!({ "datum": "A1", "facet": "1", "prime": 3, "length_cap": 8 });
    assert_schema("config.schema.json", &config);
    fs::write(&cfg, config.to_string()).unwrap();
    let cfg = cfg.to_str().unwrap();
    let v = json(&parahoric(&["--config", cfg, "hecke", "multiply", "--w1", "t[-1]", "--w2", "t[-1]"]));
    assert_eq!(v["result"]["terms"][0]["rep"], "t[-2]");
    // flags win over the file
    let v = json(&parahoric(&["--config", cfg, "hecke", "multiply", "--p", "5", "--w1", "t[-1]", "--w2", "e"]));
    assert_eq!(v["result"]["prime"], 5);
    let out = stdout(&parahoric(&["--config", cfg, "satake", "--list-lambda-minus"]));
    assert_eq!(out.lines().count(), 1 + 5);

    fs::write(dir.path().join("bad.json"), r#"{"datum":"A1","colour":"red"}"#).unwrap();
    let bad = dir.path().join("bad.json");
    assert_eq!(code(&parahoric(&["--config", bad.to_str().unwrap(), "weyl", "length", "--elt", "e"])), 2);
}

#[test]
fn cache_warm_stats_clear() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let warm = stdout(&with_cache(d, &["cache", "warm", "A1", "--facet", "", "--len", "6"]));
    assert!(warm.starts_with("13 interval entries"), "{warm}");
    let stats = json(&with_cache(d, &["cache", "stats", "--json"]));
    assert_schema("cache_stats.schema.json", &stats);
    assert_eq!(stats["entries"], 13);

    let again = stdout(&with_cache(d, &["cache", "warm", "A1", "--facet", "", "--len", "6"]));
    assert!(again.contains("(0 new)"), "{again}");
    let stats = json(&with_cache(d, &["cache", "stats", "--json"]));
    assert_eq!(stats["entries"], 13);
    assert!(stats["hits"].as_u64().unwrap() >= 13);

    stdout(&with_cache(d, &["cache", "clear"]));
    let stats = json(&with_cache(d, &["cache", "stats", "--json"]));
    assert_eq!(stats["entries"], 0);
    assert_eq!(stats["hits"], 0);
    // clearing twice is harmless
    stdout(&with_cache(d, &["cache", "clear"]));
}

#[test]
fn cache_is_transparent() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let runs: [&[&str]; 3] = [
        &["hecke", "basis", "A2", "--p", "3", "--w", "t[1,1]", "--to", "indicator"],
        &["hecke", "multiply", "C2", "--facet", "1", "--p", "5", "--w1", "s0*s1", "--w2", "s2*s0", "--witness"],
        &["satake", "A2", "--facet", "", "--levi", "1", "--p", "3", "--w", "s0*s1*s2"],
    ];
    for args in runs {
        let plain = stdout(&parahoric(args));
        let cold = stdout(&with_cache(d, args));
        let warm = stdout(&with_cache(d, args));
        let mut off = args.to_vec();
        off.push("--no-cache");
        let disabled = stdout(&with_cache(d, &off));
        assert_eq!(plain, cold);
        assert_eq!(plain, warm);
        assert_eq!(plain, disabled);
    }
    let stats = json(&with_cache(d, &["cache", "stats", "--json"]));
    assert!(stats["entries"].as_u64().unwrap() > 0);
    assert!(stats["hits"].as_u64().unwrap() > 0);
}

#[test]
fn oracle_check_passes() {
    let v = json(&parahoric(&["oracle", "check", "A1", "--len", "3", "--primes", "2,3", "--json"]));
    assert_schema("oracle_report.schema.json", &v);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["passed"] == true));
    let text = stdout(&parahoric(&["oracle", "check", "A2", "--len", "2"]));
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().all(|l| l.ends_with("PASS")));
}
