//! Text and JSON output.
//!
//! Text uses the library's canonical form (`1 - 2 e1 + 3 e12`), which parses
//! back to the same value. JSON objects map canonical blade names to
//! coefficients in (grade, mask) order and omit zeros.

use eucliff::{BladeMask, Multivector};

use crate::eval::{Outcome, Value};

/// `-0` prints as `0`.
pub fn real_text(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v}")
    }
}

pub fn value_text(value: &Value) -> String {
    match value {
        Value::Real(v) => real_text(*v),
        Value::Mv(m) => m.to_string(),
    }
}

pub fn outcome_text(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Value(v) => value_text(v),
        Outcome::Bound { name, value } => format!("{name} = {}", value_text(value)),
    }
}

fn json_number(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    serde_json::Value::from(v).to_string()
}

fn json_string(s: &str) -> String {
    serde_json::Value::from(s).to_string()
}

/// `{"e1": 1.0, "e12": -2.0}`.
pub fn terms_json(terms: &[(BladeMask, f64)]) -> String {
    let body: Vec<String> = terms
        .iter()
        .map(|(mask, c)| format!("{}: {}", json_string(&mask.name()), json_number(*c)))
        .collect();
    format!("{{{}}}", body.join(", "))
}

pub fn value_json(value: &Value) -> String {
    match value {
        Value::Real(v) => json_number(*v),
        Value::Mv(m) => multivector_json(m),
    }
}

pub fn multivector_json(m: &Multivector) -> String {
    terms_json(&m.terms())
}

pub fn outcome_json(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Value(v) => format!("{{\"result\": {}}}", value_json(v)),
        Outcome::Bound { name, value } => {
            format!(
                "{{\"name\": {}, \"result\": {}}}",
                json_string(name),
                value_json(value)
            )
        }
    }
}

/// One `--table` row.
pub fn table_row_json(a: BladeMask, b: BladeMask, product: &[(BladeMask, f64)]) -> String {
    format!(
        "{{\"a\": {}, \"b\": {}, \"product\": {}}}",
        json_string(&a.name()),
        json_string(&b.name()),
        terms_json(product)
    )
}
