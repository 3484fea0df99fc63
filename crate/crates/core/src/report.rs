//! The common report envelope emitted by every check.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: Value,
    pub pass: bool,
    pub data: Value,
}

impl Report {
    pub fn new(check: &str, params: Value, pass: bool, data: impl Serialize) -> Self {
        Report {
            check: check.to_string(),
            params,
            pass,
            data: serde_json::to_value(data).expect("report data serializes"),
        }
    }
}
