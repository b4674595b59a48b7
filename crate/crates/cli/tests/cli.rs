use jsonschema::JSONSchema;
use serde_json::Value;
use std::process::{Command, Output};
use std::sync::OnceLock;

fn schema() -> &'static JSONSchema {
    static SCHEMA: OnceLock<JSONSchema> = OnceLock::new();
    SCHEMA.get_or_init(|| {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../report.schema.json");
        let text = std::fs::read_to_string(path).expect("schema file");
        let value: Value = serde_json::from_str(&text).expect("schema is JSON");
        JSONSchema::compile(&value).expect("schema compiles")
    })
}

fn fe_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fe-lab"))
        .args(args)
        .env_remove("FE_LAB_CORPUS")
        .output()
        .expect("binary runs")
}

/// Runs a JSON-producing command, validates the envelope and returns it with the exit code.
fn report(args: &[&str]) -> (i32, Value) {
    let out = fe_lab(args);
    let code = out.status.code().expect("exit code");
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    if let Err(errors) = schema().validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{args:?} violates the schema: {msgs:#?}");
    }
    (code, v)
}

fn status(v: &Value) -> &str {
    v["status"].as_str().expect("status")
}

#[test]
fn check_exit_codes() {
    let (code, v) = report(&["check", "ap(0,2)", "N"]);
    assert_eq!(code, 0);
    assert_eq!(status(&v["result"]["verdict"]), "embeds");

    let (code, v) = report(&["check", "ap(0,3)", "ap(0,6)"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"]["refutation"]["finite_part"], serde_json::json!([0, 3]));

    let (code, v) = report(&["check", "N", "qset", "--nmax", "6", "--kmax", "1048576"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"]["certificate"]["kind"], "prefix_witnesses");
    assert_eq!(status(&v["result"]["verified"]), "true");

    let (code, v) = report(&["check", "N", "qset", "--nmax", "6", "--kmax", "4"]);
    assert_eq!(code, 2);
    assert_eq!(status(&v["result"]["verdict"]), "unknown");
}

#[test]
fn envelope_records_flags_and_seed() {
    let (_, v) = report(&["classify", "ap(0,2)", "--seed", "11", "--horizon", "500"]);
    assert_eq!(v["tool"], "fe-lab");
    assert_eq!(v["seed"], 11);
    assert_eq!(v["flags"]["horizon"], 500);
    assert_eq!(v["args"], serde_json::json!(["ap(0,2)"]));
    assert_eq!(status(&v["result"]["syndetic"]), "true");
    assert_eq!(status(&v["result"]["thick"]), "false");
}

#[test]
fn errors_use_high_exit_codes() {
    let out = fe_lab(&["check", "ap(0,(", "N"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    assert_eq!(fe_lab(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(fe_lab(&["check", "N"]).status.code(), Some(64));
    assert_eq!(fe_lab(&["check", "N", "N", "--horizon", "0"]).status.code(), Some(64));
    let out = fe_lab(&["filter", "member", "base{ap(0,2), ap(1,2)}", "N"]);
    assert_eq!(out.status.code(), Some(66));
    let out = fe_lab(&["filter", "regularity", "base{N}", "N", "--coloring", "residue:5"]);
    assert_eq!(out.status.code(), Some(67));
    assert_eq!(fe_lab(&["check", "N", "N", "--csv"]).status.code(), Some(67));
    assert_eq!(fe_lab(&["--help"]).status.code(), Some(0));
}

#[test]
fn density_peaks_match_closed_form() {
    let out = fe_lab(&["density", "qset", "--samples", "peaks", "--mmax", "20", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,count,value"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 19);
    for (row, m) in rows.iter().zip(2u64..) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[0].parse::<u64>().unwrap(), (1 << m) + m);
        assert_eq!(cols[1].parse::<u64>().unwrap(), m * (m + 1) / 2);
        let (num, den) = cols[2].split_once('/').unwrap();
        let (num, den): (u64, u64) = (num.parse().unwrap(), den.parse().unwrap());
        assert_eq!(num * ((1 << (m + 1)) + 2 * m), den * (m * m + m), "m={m}");
    }
    let (code, v) = report(&["density", "ap(0,3)", "--horizon", "300"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["natural_density"], "1/3");
}

#[test]
fn bprime_report() {
    let (code, v) = report(&["bprime", "{0,2,5}", "N", "--nmax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["shifts"].as_array().unwrap().len(), 5);
    let (code, v) = report(&["bprime", "ap(0,3)", "ap(0,6)", "--nmax", "5", "--kcap", "100"]);
    assert_eq!(code, 2);
    assert!(v["result"]["exhausted"].is_object());
    let (code, v) = report(&["bprime", "{6,10}", "{8,12}", "--nmax", "12"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["uniform_shift"], 2);
}

#[test]
fn filter_commands() {
    let (code, v) = report(&["filter", "member", "tails(pow2, 1099511627776)", "qset << 3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["index"], 16);

    let (code, v) = report(&["filter", "sum", "qset", "base{ap(0,3), N \\ {0,1}}", "tails(pow2)", "--horizon", "41"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["inner"].as_array().unwrap().len(), 41);

    let (code, _) = report(&["filter", "rich", "base{ap(0,2)}", "ap(1,2)"]);
    assert_eq!(code, 0);
    let (code, _) = report(&["filter", "rich", "base{{0,1}}", "ap(0,2)"]);
    assert_eq!(code, 1);
    let (code, _) = report(&["filter", "fe", "base{ap(0,2)}", "base{ap(0,4)}"]);
    assert_eq!(code, 1);
    let (code, _) = report(&["filter", "fe", "base{ap(0,2)}", "base{N}"]);
    assert_eq!(code, 0);

    let (code, v) = report(&["filter", "leftsum", "base{ap(0,2)}", "ap(1,2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["entries"][0]["k"], 1);
    let (code, _) = report(&["filter", "leftsum", "base{ap(0,3)}", "ap(0,6)"]);
    assert_eq!(code, 1);

    let (_, v) = report(&["filter", "regularity", "base{{0,1}}", "N"]);
    assert_eq!(status(&v["result"]["gap"]), "true");
    let (_, v) = report(&["filter", "regularity", "base{ap(0,2)}", "N", "--coloring", "residue:2"]);
    assert_eq!(status(&v["result"]["gap"]), "false");
    assert_eq!(status(&v["result"]["pieces"][0]["rich"]["verdict"]), "true");
    let (_, v) = report(&["filter", "regularity", "base{{0,1,2}}", "N", "--coloring", "blocks:3:2"]);
    assert_eq!(status(&v["result"]["gap"]), "false");
}

#[test]
fn suite_is_reproducible() {
    let args = ["suite", "--count", "60", "--seed", "7"];
    let first = fe_lab(&args);
    let second = fe_lab(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let (_, v) = report(&args);
    assert_eq!(v["result"]["violations"], 0);
}

#[test]
fn suite_dump_emits_cases() {
    let (code, v) = report(&["suite", "--count", "1", "--seed", "1", "--dump"]);
    assert_eq!(code, 0);
    let cases = v["result"]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 1);
    assert_eq!(cases[0]["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn corpus_file_and_environment() {
    let dir = std::env::temp_dir().join(format!("fe-lab-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sets.txt");
    std::fs::write(&path, "# test corpus\nsixes = ap(0,6)\nthrees = sixes | ap(3,6)\n").unwrap();
    let p = path.to_str().unwrap();

    let (code, _) = report(&["check", "sixes", "threes", "--corpus", p]);
    assert_eq!(code, 0);
    let out = Command::new(env!("CARGO_BIN_EXE_fe-lab"))
        .args(["check", "threes", "sixes"])
        .env("FE_LAB_CORPUS", p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(fe_lab(&["check", "sixes", "N"]).status.code(), Some(67));
    std::fs::remove_dir_all(&dir).ok();
}
