//! Run reports: ordered `key = value` lines, one per field, so output is
//! grep-able and diff-able without a structured-format dependency.

use std::fmt::Display;

#[derive(Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report { lines: Vec::new() };
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    /// Fixed-precision float; reports never print platform-dependent digits.
    pub fn push_f64(&mut self, key: &str, value: f64) {
        self.push(key, format!("{value:.4}"));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}
