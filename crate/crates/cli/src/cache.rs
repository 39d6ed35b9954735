//! Content-addressed store of computed tables.
//!
//! Keys hash the canonical diagram bytes, the length bound and the tool
//! version. Entries are written to a temporary file in the cache directory
//! and renamed into place, and never rewritten once present.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::TOOL_VERSION;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    /// Table JSON exactly as it was first produced.
    pub table: String,
    pub timestamp: u64,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

pub fn cache_key(canonical: &str, degree: usize) -> String {
    let mut h = Sha256::new();
    h.update(canonical.as_bytes());
    h.update([0u8]);
    h.update(degree.to_string().as_bytes());
    h.update([0u8]);
    h.update(TOOL_VERSION.as_bytes());
    hex::encode(h.finalize())
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> std::io::Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Cache { dir: dir.as_ref().to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key).then_some(entry)
    }

    pub fn put(&self, key: &str, table: &str) -> std::io::Result<()> {
        let target = self.path(key);
        if target.exists() {
            return Ok(());
        }
        let entry = CacheEntry {
            key: key.to_string(),
            table: table.to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        write_atomic(&target, serde_json::to_string(&entry)?.as_bytes())
    }
}

/// Write through a temporary sibling and rename over the target.
pub fn write_atomic(target: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = target.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(target).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_depend_on_degree_and_bytes() {
        let a = cache_key("{}", 3);
        assert_eq!(a, cache_key("{}", 3));
        assert_ne!(a, cache_key("{}", 4));
        assert_ne!(a, cache_key("{ }", 3));
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn entries_are_write_once() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        assert!(cache.get("k").is_none());
        cache.put("k", "first").unwrap();
        cache.put("k", "second").unwrap();
        assert_eq!(cache.get("k").unwrap().table, "first");
    }
}
