//! Report envelope shared by every subcommand.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const VERSION: &str = concat!("linarr ", env!("CARGO_PKG_VERSION"));

/// Hashes the argument list and every input file read, in order.
#[derive(Default)]
pub struct InputDigest {
    hasher: Sha256,
}

impl InputDigest {
    pub fn new(args: &[String]) -> Self {
        let mut d = InputDigest::default();
        for a in args {
            d.feed(b"arg", a.as_bytes());
        }
        d
    }

    /// Length-prefixed so that different splits of the same bytes differ.
    pub fn feed(&mut self, tag: &[u8], bytes: &[u8]) {
        self.hasher.update(tag);
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn finish(self) -> String {
        format!("sha256:{}", hex::encode(self.hasher.finalize()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub input_digest: String,
    pub version: &'static str,
    pub result: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorObject {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub command: Vec<String>,
    pub version: &'static str,
    pub error: ErrorObject,
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}
