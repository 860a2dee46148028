//! Run manifests: enough metadata to reproduce any output file — the
//! command, its resolved configuration, the master seed, digests of every
//! input file, the tool version, and the wall-clock duration.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::io::Read;
use std::path::Path;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    /// SHA-256 of the raw input bytes, lowercase hex.
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Echo of the resolved configuration (flags after defaulting).
    pub config: serde_json::Value,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub version: String,
    pub duration_ms: u64,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, config: serde_json::Value, seed: u64) -> Self {
        Self {
            command: command.into(),
            config,
            seed,
            inputs: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_ms: 0,
        }
    }

    pub fn add_input(&mut self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let path = path.as_ref();
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256_file(path)?,
        });
        Ok(())
    }
}

/// Hex SHA-256 digest of a file's raw bytes.
pub fn sha256_file(path: impl AsRef<Path>) -> std::io::Result<String> {
    let mut file = std::fs::File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let read = file.read(&mut buf)?;
        if read == 0 {
            break;
        }
        hasher.update(&buf[..read]);
    }
    Ok(hex(&hasher.finalize()))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
