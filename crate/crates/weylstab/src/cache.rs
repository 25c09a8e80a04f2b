//! Content-addressed result cache.
//!
//! Entries live in `<workspace>/cache/<key>.json`, where the key hashes the
//! canonical problem text, the command arguments and the crate version. An
//! entry is written to a temporary file in the same directory and renamed
//! into place, so concurrent writers never expose a partial file.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::problem::hex;
use crate::report::VERSION;

pub const WORKSPACE_ENV: &str = "WEYLSTAB_WORKSPACE";
pub const DEFAULT_WORKSPACE: &str = ".weylstab";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub version: String,
    pub created_unix: u64,
    pub exit_code: i32,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lookup {
    Hit(CacheEntry),
    Miss,
    /// The file exists but could not be used; the message says why.
    Corrupt(String),
}

/// Workspace precedence: explicit flag, then the environment, then `.weylstab/`.
pub fn workspace_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(WORKSPACE_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => PathBuf::from(DEFAULT_WORKSPACE),
    }
}

pub fn cache_key(canonical_problem: &str, args: &str) -> String {
    let mut h = Sha256::new();
    h.update(canonical_problem.as_bytes());
    h.update(b"\n--\n");
    h.update(args.as_bytes());
    h.update(b"\n--\n");
    h.update(VERSION.as_bytes());
    hex(&h.finalize())
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(workspace: &Path) -> Self {
        Cache {
            dir: workspace.join("cache"),
        }
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let text = match std::fs::read_to_string(self.path(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(entry) if entry.key == key && entry.version == VERSION => Lookup::Hit(entry),
            Ok(_) => Lookup::Corrupt("entry does not match its key".into()),
            Err(e) => Lookup::Corrupt(e.to_string()),
        }
    }

    pub fn put(&self, key: &str, exit_code: i32, output: &str) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            key: key.to_string(),
            version: VERSION.to_string(),
            created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            exit_code,
            output: output.to_string(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
