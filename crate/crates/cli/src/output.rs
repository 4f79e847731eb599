//! Atomic output files and run manifests.

use crate::config::ConfigEcho;
use crate::error::CliError;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Serialize, Debug, Clone)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: ConfigEcho,
    pub output: String,
    pub sha256: String,
    pub summary: Value,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Writes `bytes` to a temporary file next to `path` and renames it over.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| CliError::Config(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

pub fn to_pretty<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Sends a payload to `out` (with its manifest beside it) or to stdout.
pub fn emit(
    command: &str,
    config: &ConfigEcho,
    payload: &str,
    out: Option<&Path>,
    summary: Value,
) -> Result<(), CliError> {
    match out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => {
            let manifest = Manifest {
                tool: "hecke-lab",
                version: env!("CARGO_PKG_VERSION"),
                command: command.to_string(),
                config: config.clone(),
                output: path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
                sha256: sha256_hex(payload.as_bytes()),
                summary,
            };
            write_atomic(path, payload.as_bytes())?;
            write_atomic(&manifest_path(path), to_pretty(&manifest)?.as_bytes())
        }
    }
}
