//! Content-addressed result cache and ideal store.
//!
//! Every command derives a key from the engine version, the command name, the
//! full run configuration, and the canonical inputs. The cache stores the
//! exact output string, so a warm rerun replays the bytes it printed the
//! first time — determinism is an equality of strings, not a hope about
//! iteration order. Ideals are stored separately under their content hash so
//! later commands can name them by hash instead of rebuilding.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use symlab_core::{EngineError, ENGINE_VERSION};

use crate::record::IdealRecord;

/// One stored result: the exact output bytes a command printed.
#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: String,
    engine: String,
    created_unix_ms: u128,
    output: String,
}

pub struct Cache {
    dir: PathBuf,
}

/// Derive the cache key for a command invocation. Everything that can change
/// the answer must be in here; anything that cannot (like which path the
/// ideal was loaded from) must not be.
pub fn result_key(command: &str, config_json: &str, canonical_inputs: &str) -> String {
    let mut h = Sha256::new();
    h.update(ENGINE_VERSION.as_bytes());
    h.update(b"\n");
    h.update(command.as_bytes());
    h.update(b"\n");
    h.update(config_json.as_bytes());
    h.update(b"\n");
    h.update(canonical_inputs.as_bytes());
    format!("{:x}", h.finalize())
}

/// Write `bytes` to `path` atomically: temp file in the same directory, then
/// rename. A crashed run leaves at worst a stray temp file, never a torn
/// entry.
fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), EngineError> {
    let dir = path
        .parent()
        .ok_or_else(|| EngineError::parse("cache path has no parent".to_string()))?;
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp.{}",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("entry"),
        std::process::id()
    ));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn now_unix_ms() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

fn is_hex(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase())
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn result_path(&self, key: &str) -> PathBuf {
        self.dir.join("results").join(format!("{key}.json"))
    }

    fn ideal_path(&self, hash: &str) -> PathBuf {
        self.dir.join("ideals").join(format!("{hash}.json"))
    }

    /// Fetch the stored output for a key, if present and intact.
    pub fn lookup(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.result_path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.key == key {
            Some(entry.output)
        } else {
            None
        }
    }

    /// Store the exact output string under its key.
    pub fn store(&self, key: &str, output: &str) -> Result<(), EngineError> {
        let entry = CacheEntry {
            key: key.to_string(),
            engine: ENGINE_VERSION.to_string(),
            created_unix_ms: now_unix_ms(),
            output: output.to_string(),
        };
        let body = serde_json::to_string_pretty(&entry)
            .map_err(|e| EngineError::parse(format!("cache serialization failed: {e}")))?;
        atomic_write(&self.result_path(key), body.as_bytes())
    }

    /// Store an ideal record under its content hash; returns the path.
    pub fn store_ideal(&self, record: &IdealRecord) -> Result<PathBuf, EngineError> {
        let path = self.ideal_path(&record.hash);
        let body = serde_json::to_string_pretty(record)
            .map_err(|e| EngineError::parse(format!("record serialization failed: {e}")))?;
        atomic_write(&path, body.as_bytes())?;
        Ok(path)
    }

    /// Resolve an ideal reference: an existing file path wins; otherwise a
    /// full 64-hex hash or a unique hex prefix of at least 8 characters names
    /// an entry in the store.
    pub fn load_ideal(&self, reference: &str) -> Result<IdealRecord, EngineError> {
        let as_path = Path::new(reference);
        if as_path.is_file() {
            let text = fs::read_to_string(as_path)?;
            return serde_json::from_str(&text).map_err(|e| {
                EngineError::parse(format!("bad ideal record {reference:?}: {e}"))
            });
        }
        if !is_hex(reference) || reference.len() < 8 || reference.len() > 64 {
            return Err(EngineError::parse(format!(
                "ideal reference {reference:?} is neither an existing file nor a hex hash \
                 (need the full 64-character hash or a unique prefix of at least 8)"
            )));
        }
        let exact = self.ideal_path(reference);
        if reference.len() == 64 && exact.is_file() {
            let text = fs::read_to_string(&exact)?;
            return serde_json::from_str(&text)
                .map_err(|e| EngineError::parse(format!("bad ideal record {reference:?}: {e}")));
        }
        let store = self.dir.join("ideals");
        let mut matches = Vec::new();
        if let Ok(entries) = fs::read_dir(&store) {
            for entry in entries.flatten() {
                let name = entry.file_name();
                let name = name.to_string_lossy();
                if let Some(stem) = name.strip_suffix(".json") {
                    if stem.starts_with(reference) {
                        matches.push(stem.to_string());
                    }
                }
            }
        }
        matches.sort();
        match matches.len() {
            0 => Err(EngineError::parse(format!(
                "no stored ideal matches {reference:?} (store: {})",
                store.display()
            ))),
            1 => {
                let text = fs::read_to_string(self.ideal_path(&matches[0]))?;
                serde_json::from_str(&text)
                    .map_err(|e| EngineError::parse(format!("bad ideal record: {e}")))
            }
            n => Err(EngineError::parse(format!(
                "ideal reference {reference:?} is ambiguous ({n} matches)"
            ))),
        }
    }
}
