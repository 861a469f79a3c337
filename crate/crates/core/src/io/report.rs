use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::IoError;

pub const SCHEMA_VERSION: u32 = 1;

/// The JSON document every command emits.
///
/// `parameters` and `results` are JSON values whose object keys are sorted,
/// so identical inputs serialize to identical bytes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    /// `sha256:<hex>` of the input file, if the command read one.
    pub input_digest: Option<String>,
    pub parameters: Value,
    pub results: Value,
}

impl ReportDocument {
    pub fn new(
        command: impl Into<String>,
        input_digest: Option<String>,
        parameters: impl Serialize,
        results: impl Serialize,
    ) -> Result<Self, serde_json::Error> {
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            input_digest,
            parameters: serde_json::to_value(parameters)?,
            results: serde_json::to_value(results)?,
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

pub fn file_digest(path: &Path) -> Result<String, IoError> {
    let bytes = std::fs::read(path).map_err(|e| IoError::file(path, e))?;
    Ok(format!("sha256:{}", hex::encode(Sha256::digest(&bytes))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted_and_stable() {
        let a = ReportDocument::new("x", None, json!({"b": 1, "a": 2}), json!([1.5])).unwrap();
        let text = a.to_json();
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert_eq!(text, a.clone().to_json());
        assert!(text.starts_with("{\n  \"schema_version\": 1,"));
    }

    #[test]
    fn digest_of_known_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f");
        std::fs::write(&p, b"abc").unwrap();
        assert_eq!(
            file_digest(&p).unwrap(),
            "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
