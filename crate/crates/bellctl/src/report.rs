use std::collections::BTreeMap;

use bell_workbench::Tolerances;
use serde_json::{Map, Value};

pub const TOOL_VERSION: &str = concat!("bellctl ", env!("CARGO_PKG_VERSION"));

/// Significant digits kept for every float in a report or CSV row.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Output of one command. Serializes to a single JSON object with sorted keys.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub verdicts: BTreeMap<String, bool>,
    pub tool_version: String,
    pub tolerances: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        let t = Tolerances::DEFAULT;
        let tolerances = [
            ("bound", t.bound),
            ("comparison", t.comparison),
            ("feasibility", t.feasibility),
            ("hermiticity", t.hermiticity),
            ("psd", t.psd),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            tool_version: TOOL_VERSION.to_string(),
            tolerances,
        }
    }

    pub fn parameter(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(name.to_string(), value.into());
        self
    }

    pub fn result(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(name.to_string(), value.into());
        self
    }

    pub fn verdict(&mut self, name: &str, holds: bool) -> &mut Self {
        self.verdicts.insert(name.to_string(), holds);
        self
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), Value::from(self.command.clone()));
        root.insert("parameters".into(), object(&self.parameters));
        root.insert("results".into(), object(&self.results));
        root.insert(
            "verdicts".into(),
            Value::Object(
                self.verdicts
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::Bool(*v)))
                    .collect(),
            ),
        );
        root.insert(
            "tool_version".into(),
            Value::from(self.tool_version.clone()),
        );
        root.insert(
            "tolerances".into(),
            Value::Object(
                self.tolerances
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::from(*v)))
                    .collect(),
            ),
        );
        sort_and_round(Value::Object(root))
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report is plain JSON");
        s.push('\n');
        s
    }
}

fn object(m: &BTreeMap<String, Value>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
}

/// Rounds to [`SIGNIFICANT_DIGITS`]; negative zero becomes zero.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let r: f64 = s.parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal text of `round_sig(x)`.
pub fn format_float(x: f64) -> String {
    format!("{}", round_sig(x))
}

fn sort_and_round(v: Value) -> Value {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(_), _, _) | (_, Some(_), _) => Value::Number(n),
            (_, _, Some(f)) => Value::from(round_sig(f)),
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(sort_and_round).collect()),
        Value::Object(o) => {
            let sorted: BTreeMap<String, Value> =
                o.into_iter().map(|(k, v)| (k, sort_and_round(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        other => other,
    }
}
