use std::io::Write;

use serde_json::Value;

use crate::Format;

/// What a verb produced: a yes/no decision, a value, or a document that
/// also has a DOT rendering.
pub struct Report {
    decision: Option<bool>,
    json: Value,
    text: String,
    dot: Option<String>,
}

impl Report {
    pub fn decision(b: bool, json: Value, text: impl Into<String>) -> Self {
        Report { decision: Some(b), json, text: text.into(), dot: None }
    }

    pub fn value(json: Value, text: impl Into<String>) -> Self {
        Report { decision: None, json, text: text.into(), dot: None }
    }

    pub fn document(json: Value, dot: String) -> Self {
        let text = serde_json::to_string_pretty(&json).expect("serializable");
        Report { decision: None, json, text, dot: Some(dot) }
    }

    pub fn exit_code(&self) -> u8 {
        match self.decision {
            Some(false) => 1,
            _ => 0,
        }
    }

    /// Writes to stdout; a closed pipe is not an error.
    pub fn emit(&self, format: Format) {
        let json = || serde_json::to_string_pretty(&self.json).expect("serializable") + "\n";
        let out = match (format, &self.dot) {
            (Format::Json, _) => json(),
            (Format::Dot, Some(d)) => d.clone(),
            _ => format!("{}\n", self.text),
        };
        let _ = std::io::stdout().lock().write_all(out.as_bytes());
    }
}
