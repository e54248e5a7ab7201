//! Text and JSON renderings of an [`InverseReport`].
//!
//! JSON numbers are emitted as decimal strings; key order is fixed by the
//! struct declarations below.

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::Value;

use crate::engine::InverseReport;
use crate::semiring::AggregateValue;

#[derive(Debug, Serialize)]
pub struct JsonOps {
    pub mul: u64,
    pub add: u64,
    pub atomic_series: usize,
    pub divisors: usize,
}

#[derive(Debug, Serialize)]
pub struct JsonDivisor {
    pub d: String,
    pub result: Value,
}

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub n: String,
    pub function: String,
    pub aggregate: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisors: Option<Vec<JsonDivisor>>,
    pub count_ops: JsonOps,
    pub elapsed_ms: f64,
}

pub fn value_json(value: Option<&AggregateValue>) -> Value {
    match value {
        None => Value::Null,
        Some(AggregateValue::Integer(x)) => Value::String(x.to_string()),
        Some(AggregateValue::Set(s)) => Value::Array(s.iter().map(|x| Value::String(x.to_string())).collect()),
    }
}

impl JsonReport {
    pub fn new(report: &InverseReport<AggregateValue>) -> Self {
        JsonReport {
            n: report.n.to_string(),
            function: report.function.clone(),
            aggregate: report.aggregate.to_string(),
            result: value_json(report.value.as_ref()),
            divisors: report.divisors.as_ref().map(|ds| {
                ds.iter()
                    .map(|(d, v)| JsonDivisor { d: d.to_string(), result: value_json(v.as_ref()) })
                    .collect()
            }),
            count_ops: JsonOps {
                mul: report.counter.mul_count,
                add: report.counter.add_count,
                atomic_series: report.atomic_count,
                divisors: report.divisor_count,
            },
            elapsed_ms: report.elapsed.as_secs_f64() * 1e3,
        }
    }
}

pub fn to_json(report: &InverseReport<AggregateValue>) -> String {
    serde_json::to_string(&JsonReport::new(report)).expect("report serializes")
}

fn join(s: &[BigUint]) -> String {
    s.iter().map(BigUint::to_string).collect::<Vec<_>>().join(", ")
}

/// One value, a bracketed list, or `EMPTY`.
pub fn value_text(value: Option<&AggregateValue>) -> String {
    match value {
        None => "EMPTY".into(),
        Some(AggregateValue::Integer(x)) => x.to_string(),
        Some(AggregateValue::Set(s)) => format!("[{}]", join(s)),
    }
}

pub fn to_text(report: &InverseReport<AggregateValue>) -> String {
    let mut out = value_text(report.value.as_ref());
    if let Some(ds) = &report.divisors {
        for (d, v) in ds {
            out.push_str(&format!("\n{d}\t{}", value_text(v.as_ref())));
        }
    }
    out
}
