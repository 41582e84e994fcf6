use std::fmt;
use std::time::Duration;

use sha2::{Digest, Sha256};

/// `KEY=VALUE` lines, in insertion order.
#[derive(Clone, Debug, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str, digest: &InputDigest) -> Self {
        let mut r = Report::default();
        r.push("COMMAND", command);
        r.push("INPUT_DIGEST", digest.hex());
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        let key = key.into();
        debug_assert!(!key.is_empty() && !key.contains('=') && !key.contains(char::is_whitespace));
        // values stay on one line so every line parses as KEY=VALUE
        let value = value.to_string().replace('\n', " ");
        self.lines.push((key, value));
    }

    pub fn finish(mut self, elapsed: Duration) -> String {
        self.push("TIME_MS", elapsed.as_millis());
        self.to_string()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// SHA-256 over every input that determines a report: the command name,
/// the scalar parameters and the bytes of each input file.
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new(command: &str) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        InputDigest(h)
    }

    pub fn field(&mut self, name: &str, bytes: &[u8]) -> &mut Self {
        self.0.update((name.len() as u64).to_le_bytes());
        self.0.update(name.as_bytes());
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
        self
    }

    pub fn hex(&self) -> String {
        format!("{:x}", self.0.clone().finalize())
    }
}
