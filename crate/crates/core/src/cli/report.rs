use std::fmt::Write as _;

use sha2::{Digest, Sha256};

/// A deterministic plain-text report: inputs with digests, payload lines,
/// summary values and named checks.
#[derive(Clone, Debug, Default)]
pub struct Report {
    verb: String,
    inputs: Vec<(String, String)>,
    lines: Vec<String>,
    values: Vec<(String, String)>,
    checks: Vec<(String, bool)>,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in hash {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

impl Report {
    pub fn new(verb: &str) -> Self {
        Self {
            verb: verb.to_string(),
            ..Self::default()
        }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push((name.to_string(), digest(bytes)));
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// A `key: value` payload line that also goes into the summary.
    pub fn value(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        self.lines.push(format!("{key}: {value}"));
        self.values.push((key.to_string(), value));
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.push((name.to_string(), ok));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "verb: {}", self.verb).unwrap();
        for (name, hash) in &self.inputs {
            writeln!(out, "input: {name} sha256:{hash}").unwrap();
        }
        for l in &self.lines {
            writeln!(out, "{l}").unwrap();
        }
        for (name, ok) in &self.checks {
            writeln!(out, "check {name}: {}", if *ok { "pass" } else { "fail" }).unwrap();
        }
        writeln!(out, "status: {}", if self.passed() { "ok" } else { "fail" }).unwrap();
        out
    }

    pub fn render_summary(&self) -> String {
        let mut out = String::new();
        writeln!(out, "verb={}", self.verb).unwrap();
        for (i, (name, hash)) in self.inputs.iter().enumerate() {
            writeln!(out, "input.{i}={name}").unwrap();
            writeln!(out, "input.{i}.sha256={hash}").unwrap();
        }
        for (key, value) in &self.values {
            writeln!(out, "{}={value}", key.replace(' ', "_")).unwrap();
        }
        for (name, ok) in &self.checks {
            writeln!(
                out,
                "check.{}={}",
                name.replace(' ', "_"),
                if *ok { "pass" } else { "fail" }
            )
            .unwrap();
        }
        writeln!(out, "status={}", if self.passed() { "ok" } else { "fail" }).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            digest(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn summary_lines() {
        let mut r = Report::new("validate");
        r.input("a.sset", b"");
        r.value("presheaf", "ok");
        r.check("round trip", true);
        let s = r.render_summary();
        assert!(s.contains("presheaf=ok\n"));
        assert!(s.contains("check.round_trip=pass\n"));
        assert!(s.ends_with("status=ok\n"));
    }
}
