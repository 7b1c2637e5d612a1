//! Structured command reports.
//!
//! JSON object keys are emitted in sorted order, so identical runs produce
//! byte-identical documents. The text form lists the same fields, one per
//! line with aligned values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    /// Arguments as given, without the program name.
    pub command: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    /// `Some` when the command checked a property by oracle.
    pub verified: Option<bool>,
    /// `Some` for searches: whether the score is proven optimal.
    pub optimal: Option<bool>,
    pub seed: Option<u64>,
    pub version: String,
}

impl ReportDocument {
    pub fn new(command: &[String]) -> Self {
        Self {
            command: command.to_vec(),
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            verified: None,
            optimal: None,
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.to_owned(), to_value(value));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.to_owned(), to_value(value));
        self
    }

    pub fn to_json(&self) -> String {
        // Going through `Value` sorts every object's keys, struct fields included.
        let value = serde_json::to_value(self).expect("report is serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("value is serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        rows.push(("command".into(), self.command.join(" ")));
        for (k, v) in &self.parameters {
            rows.push((k.clone(), render(v)));
        }
        for (k, v) in &self.results {
            rows.push((k.clone(), render(v)));
        }
        if let Some(v) = self.verified {
            rows.push(("verified".into(), yes_no(v).into()));
        }
        if let Some(o) = self.optimal {
            rows.push((
                "optimal".into(),
                if o { "proven" } else { "not proven" }.into(),
            ));
        }
        if let Some(s) = self.seed {
            rows.push(("seed".into(), s.to_string()));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values are serializable")
}

pub(crate) fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Bool(b) => yes_no(*b).into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trips_with_sorted_keys() {
        let mut r = ReportDocument::new(&["bound".into(), "sphere".into()]);
        r.param("q", 3).param("n", 8).result("bound", "729");
        r.verified = Some(true);
        let json = r.to_json();
        assert_eq!(ReportDocument::from_json(&json).unwrap(), r);
        let keys: Vec<usize> = [
            "\"command\"",
            "\"optimal\"",
            "\"parameters\"",
            "\"results\"",
            "\"seed\"",
            "\"verified\"",
            "\"version\"",
        ]
        .iter()
        .map(|k| json.find(k).unwrap())
        .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(json.find("\"n\"").unwrap() < json.find("\"q\"").unwrap());
    }

    #[test]
    fn text_is_aligned() {
        let mut r = ReportDocument::new(&["x".into()]);
        r.result("size", 32).result("t_code", true);
        assert_eq!(r.to_text(), "command  x\nsize     32\nt_code   yes\n");
    }
}
