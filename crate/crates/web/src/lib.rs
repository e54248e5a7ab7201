//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` instead of throwing.

use invmult::report::{value_json, JsonReport};
use invmult::table::{table_row, Family};
use invmult::{invert_kind, parse_input, AggregateKind, AggregateValue, Function, InvertOptions};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Smaller than the native default so a single tab stays responsive.
pub const WEB_DIVISOR_CAP: usize = 1 << 18;

/// Largest family index accepted by [`table`].
pub const WEB_TABLE_MAX_INDEX: u64 = 40;

fn options(all_divisors: bool) -> InvertOptions {
    InvertOptions { all_divisors, divisor_cap: WEB_DIVISOR_CAP }
}

pub fn parse_function(name: &str, k: u32) -> Result<Function, String> {
    match name {
        "phi" => Ok(Function::Phi),
        "sigma" if k >= 1 => Ok(Function::Sigma(k)),
        "sigma" => Err("k must be at least 1".into()),
        other => Err(format!("unknown function `{other}`")),
    }
}

fn wrap(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

pub fn invert_value(function: &str, k: u32, aggregate: &str, n: &str) -> Result<Value, String> {
    let f = parse_function(function, k)?;
    let kind: AggregateKind = aggregate.parse().map_err(|e: invmult::Error| e.to_string())?;
    let n = parse_input(n).and_then(|e| e.factorization()).map_err(|e| e.to_string())?;
    let report = invert_kind(&n, &f, kind, &options(false)).map_err(|e| e.to_string())?;
    let mut doc = serde_json::to_value(JsonReport::new(&report)).map_err(|e| e.to_string())?;
    doc["factored"] = Value::String(n.to_string());
    Ok(doc)
}

/// `|f⁻¹(d)|` for every `d | n`, from one all-divisors run.
pub fn divisor_profile_value(function: &str, k: u32, n: &str) -> Result<Value, String> {
    let f = parse_function(function, k)?;
    let n = parse_input(n).and_then(|e| e.factorization()).map_err(|e| e.to_string())?;
    let report = invert_kind(&n, &f, AggregateKind::Count, &options(true)).map_err(|e| e.to_string())?;
    let points: Vec<Value> = report
        .divisors
        .unwrap_or_default()
        .into_iter()
        .map(|(d, v)| {
            let count = match v {
                Some(AggregateValue::Integer(c)) => c.to_string(),
                _ => "0".into(),
            };
            json!({ "d": d.to_string(), "count": count })
        })
        .collect();
    Ok(json!({ "n": n.value().to_string(), "function": f.to_string(), "points": points }))
}

pub fn table_value(family: &str, function: &str, k: u32, aggregates: &str, from: u64, to: u64) -> Result<Value, String> {
    let family: Family = family.parse().map_err(|e: invmult::Error| e.to_string())?;
    let f = parse_function(function, k)?;
    if from > to || to > WEB_TABLE_MAX_INDEX {
        return Err(format!("need from ≤ to ≤ {WEB_TABLE_MAX_INDEX}"));
    }
    let kinds: Vec<AggregateKind> = aggregates
        .split(',')
        .map(|s| s.trim().parse().map_err(|e: invmult::Error| e.to_string()))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for m in from..=to {
        let row = table_row(family, m, f, &kinds, &options(false)).map_err(|e| e.to_string())?;
        let cells: Vec<Value> = row.columns.iter().map(|c| value_json(c.value.as_ref())).collect();
        rows.push(json!({ "m": m, "n": row.n.to_string(), "cells": cells }));
    }
    let header: Vec<String> = kinds.iter().map(ToString::to_string).collect();
    Ok(json!({ "family": family.to_string(), "function": f.to_string(), "aggregates": header, "rows": rows }))
}

#[wasm_bindgen]
pub fn invert(function: &str, k: u32, aggregate: &str, n: &str) -> String {
    wrap(invert_value(function, k, aggregate, n))
}

#[wasm_bindgen]
pub fn divisor_profile(function: &str, k: u32, n: &str) -> String {
    wrap(divisor_profile_value(function, k, n))
}

#[wasm_bindgen]
pub fn table(family: &str, function: &str, k: u32, aggregates: &str, from: u64, to: u64) -> String {
    wrap(table_value(family, function, k, aggregates, from, to))
}
