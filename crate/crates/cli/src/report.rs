//! Plain-text `key = value` reports with a fixed key order.

use std::fmt::Display;

use crate::format::{g17, parse_float};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(&mut self, key: impl Into<String>, value: impl Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn float(&mut self, key: impl Into<String>, value: f64) {
        self.text(key, g17(value));
    }

    pub fn floats(&mut self, key: impl Into<String>, values: impl IntoIterator<Item = f64>) {
        let list: Vec<String> = values.into_iter().map(g17).collect();
        self.text(key, list.join(","));
    }

    pub fn list<T: Display>(&mut self, key: impl Into<String>, values: impl IntoIterator<Item = T>) {
        let list: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
        self.text(key, list.join(","));
    }

    /// Free-form value; decimal numbers are normalized to 17 significant digits.
    pub fn value(&mut self, key: impl Into<String>, raw: &str) {
        match parse_float(raw) {
            Some(x) if raw.contains(['.', 'e', 'E']) || raw.len() > 17 => self.float(key, x),
            _ => self.text(key, raw),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(" =");
            if !v.is_empty() {
                out.push(' ');
                out.push_str(v);
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_insertion_order() {
        let mut r = Report::new();
        r.text("zeta", "last");
        r.float("alpha", 0.1);
        r.floats("list", [1.0, 0.5]);
        r.list("counts", [3usize, 4]);
        r.value("meta", "0.001");
        r.value("count", "4096");
        r.value("note", "unavailable: x");
        r.value("huge", &2f64.powi(140).to_string());
        assert_eq!(
            r.render(),
            "zeta = last\nalpha = 0.10000000000000001\nlist = 1,0.5\ncounts = 3,4\nmeta = 0.001\ncount = 4096\nnote = unavailable: x\nhuge = 1.3937965749081639e+42\n"
        );
        assert_eq!(r.get("alpha"), Some("0.10000000000000001"));
    }
}
