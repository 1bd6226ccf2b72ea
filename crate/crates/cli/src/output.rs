//! Report model shared by every subcommand, rendered as JSON or as plain
//! `key: value` lines.

use serde_json::{Map, Number, Value};

/// Float with 17 significant digits; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        let text = if x == 0.0 { "0.0".to_string() } else { format!("{x:.16e}") };
        Value::Number(text.parse::<Number>().expect("formatted float parses"))
    } else if x.is_nan() {
        Value::String("nan".into())
    } else if x > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}

/// Exact integer of any size.
pub fn int(x: impl ToString) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integer parses"))
}

#[derive(Default)]
pub struct Section(Map<String, Value>);

impl Section {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), v.into());
        self
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.0.insert(key.to_string(), v.into());
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }
}

impl From<Section> for Value {
    fn from(s: Section) -> Self {
        s.into_value()
    }
}

pub struct Report {
    pub op: String,
    pub inputs: Section,
    pub result: Value,
    pub diagnostics: Section,
}

impl Report {
    pub fn new(op: &str, inputs: Section) -> Self {
        Self { op: op.to_string(), inputs, result: Value::Null, diagnostics: Section::new() }
    }

    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("op".into(), Value::String(self.op.clone()));
        m.insert("inputs".into(), self.inputs.0.clone().into());
        m.insert("result".into(), self.result.clone());
        m.insert("diagnostics".into(), self.diagnostics.0.clone().into());
        serde_json::to_string_pretty(&Value::Object(m)).expect("json serialises")
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("op: {}\n", self.op);
        flatten("inputs", &self.inputs.0.clone().into(), &mut out);
        flatten("result", &self.result, &mut out);
        flatten("diagnostics", &self.diagnostics.0.clone().into(), &mut out);
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&format!("{prefix}.{k}"), v, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, v) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        Value::Null => {}
        _ => out.push_str(&format!("{prefix}: {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(1.0 / 3.0).to_string(), "3.3333333333333331e-1");
        assert_eq!(num(6.0).to_string(), "6.0000000000000000e+0");
        assert_eq!(num(f64::INFINITY), Value::String("inf".into()));
        assert_eq!(int("123456789012345678901234567890").to_string(), "123456789012345678901234567890");
    }
}
