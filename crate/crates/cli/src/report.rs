//! Reports rendered either as `key: value` text or as JSON. Both renderings
//! come from the same field list, so they always carry the same verdict.

use serde_json::{json, Map, Value};

use crate::structure::{CliError, EXIT_FAILED, EXIT_INVALID, EXIT_LIMIT, EXIT_OK};

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub code: i32,
    /// A one-line summary printed before the fields in text mode.
    pub headline: Option<String>,
    pub fields: Vec<(String, Value)>,
}

pub fn status(code: i32) -> &'static str {
    match code {
        EXIT_OK => "ok",
        EXIT_FAILED => "failed",
        EXIT_INVALID => "invalid",
        EXIT_LIMIT => "limit",
        _ => "unknown",
    }
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            code: EXIT_OK,
            headline: None,
            fields: Vec::new(),
        }
    }

    pub fn error(command: &'static str, e: &CliError) -> Self {
        let mut r = Report::new(command);
        r.code = e.code;
        r.set("error", e.message.clone());
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn list<I, S>(&mut self, key: &str, items: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let v: Vec<Value> = items.into_iter().map(|s| Value::String(s.into())).collect();
        self.set(key, Value::Array(v));
    }

    /// Marks the report failed unless `ok`.
    pub fn require(&mut self, ok: bool) {
        if !ok && self.code == EXIT_OK {
            self.code = EXIT_FAILED;
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        if let Some(h) = &self.headline {
            out.push_str(h);
            out.push('\n');
        }
        for (k, v) in &self.fields {
            match v {
                Value::Array(items) => {
                    out.push_str(&format!("{k}:\n"));
                    for it in items {
                        out.push_str(&format!("  {}\n", scalar(it)));
                    }
                }
                other => out.push_str(&format!("{k}: {}\n", scalar(other))),
            }
        }
        out.push_str(&format!("verdict: {}\n", status(self.code)));
        out
    }

    pub fn json(&self) -> String {
        let mut fields = Map::new();
        for (k, v) in &self.fields {
            fields.insert(k.clone(), v.clone());
        }
        let doc = json!({
            "command": self.command,
            "status": status(self.code),
            "exit_code": self.code,
            "report": Value::Object(fields),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("values serialize");
        s.push('\n');
        s
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}
