use serde::Serialize;
use serde_json::Value;

use crate::config::Format;
use crate::error::Result;

/// Result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    pub text: String,
    /// False when a relation that should hold does not.
    pub passed: bool,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, text: String, passed: bool) -> Result<Self> {
        let value = serde_json::to_value(value).map_err(|e| crate::error::usage(format!("cannot encode output: {}", e)))?;
        Ok(Report { value, text, passed })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.value).expect("JSON values always encode"),
            Format::Text => self.text.trim_end().to_string(),
        }
    }
}
