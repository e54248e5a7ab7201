use std::process::{Command, Output};

use serde_json::Value;

fn invmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invmult")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn count_of_four_factorial() {
    let o = invmult(&["invert", "--function", "phi", "--aggregate", "count", "--n", "4!"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "10");
}

#[test]
fn invert_is_the_default_command() {
    let o = invmult(&["--function", "sigma", "--aggregate", "set", "--n", "12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[6, 11]");
}

#[test]
fn empty_preimage_exits_zero() {
    let o = invmult(&["--n", "14"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "EMPTY");

    let o = invmult(&["--n", "14", "--format", "json", "--aggregate", "min"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["result"], Value::Null);
}

#[test]
fn json_report() {
    let o = invmult(&["invert", "--n", "24", "--format", "json"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["n"], "24");
    assert_eq!(doc["function"], "phi");
    assert_eq!(doc["aggregate"], "set");
    let result: Vec<&str> = doc["result"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(result, ["35", "39", "45", "52", "56", "70", "72", "78", "84", "90"]);
    assert!(doc["count_ops"]["mul"].as_u64().unwrap() > 0);
    assert!(doc["elapsed_ms"].is_number());
}

#[test]
fn large_factorial_count_as_decimal_string() {
    let o = invmult(&["--n", "15!", "--aggregate", "count", "--format", "json"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["n"], "1307674368000");
    assert!(doc["result"].is_string());
}

#[test]
fn all_divisors_and_stats() {
    let o = invmult(&["--n", "12", "--aggregate", "count", "--all-divisors", "--stats"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "6\n1\t2\n2\t3\n3\tEMPTY\n4\t4\n6\t4\n12\t6");
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("mul=") && err.contains("tau=6"), "{err}");
}

#[test]
fn factorial_min_table() {
    let o = invmult(&["table", "--family", "factorial", "--from", "1", "--to", "6", "--function", "phi", "--aggregate", "min"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let column: Vec<&str> = out.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(&column[..4], ["1", "3", "7", "35"]);
    assert_eq!(column.len(), 6);
}

#[test]
fn table_json_rows_are_ordered() {
    let o = invmult(&["table", "--family", "power10", "--from", "1", "--to", "5", "--function", "sigma", "--format", "json"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ms: Vec<u64> = doc["rows"].as_array().unwrap().iter().map(|r| r["m"].as_u64().unwrap()).collect();
    assert_eq!(ms, [1, 2, 3, 4, 5]);
    assert_eq!(doc["rows"][0]["results"][0]["aggregate"], "count");
}

#[test]
fn oracle_subcommand() {
    let o = invmult(&["oracle", "--n", "2", "--bound", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[3, 4, 6]");
    let o = invmult(&["oracle", "--function", "phi", "--n", "14", "--bound", "392"]);
    assert_eq!(stdout(&o), "EMPTY");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(invmult(&["--n", "4^2*3"]).status.code(), Some(1));
    assert_eq!(invmult(&["--n", "12+"]).status.code(), Some(1));
    assert_eq!(invmult(&["--aggregate", "median", "--n", "12"]).status.code(), Some(1));
    assert_eq!(invmult(&["invert"]).status.code(), Some(1));
    assert_eq!(invmult(&["--bogus"]).status.code(), Some(1));
}

#[test]
fn resource_limit_exits_two() {
    // τ(100#) = 2^25 exceeds the default divisor cap
    let o = invmult(&["--n", "100#", "--aggregate", "count"]);
    assert_eq!(o.status.code(), Some(2));
    let o = invmult(&["oracle", "--n", "10", "--bound", "100000000000"]);
    assert_eq!(o.status.code(), Some(2));
}
