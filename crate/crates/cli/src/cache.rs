//! Content-addressed store for sequence tables.
//!
//! An entry is `<key>.seq` in the sequence file format next to
//! `<key>.sha256`, the digest of the file body. An entry whose body does not
//! match its digest, or does not parse, is treated as a miss and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use takeuchi_core::sequences::SeqValue;
use takeuchi_core::SequenceTable;

use crate::output::write_atomic;

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn digest(text: &str) -> String {
    hex(&Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

/// What identifies a table: name, largest index, parameter, value domain.
#[derive(Clone, Debug)]
pub struct Key<'a> {
    pub name: &'a str,
    pub n_max: usize,
    pub lambda: Option<String>,
    pub domain: &'a str,
}

impl Key<'_> {
    pub fn id(&self) -> String {
        let lambda = self.lambda.as_deref().unwrap_or("-");
        digest(&format!("{}\n{}\n{}\n{}", self.name, self.n_max, lambda, self.domain))
    }
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn entry_path(&self, key: &Key) -> PathBuf {
        self.dir.join(format!("{}.seq", key.id()))
    }

    fn digest_path(&self, key: &Key) -> PathBuf {
        self.dir.join(format!("{}.sha256", key.id()))
    }

    /// The cached table, or `None` on a miss. Damaged entries are reported on
    /// stderr and count as misses.
    pub fn lookup<T: SeqValue>(&self, key: &Key) -> Option<SequenceTable<T>> {
        let path = self.entry_path(key);
        let body = fs::read_to_string(&path).ok()?;
        let recorded = fs::read_to_string(self.digest_path(key)).unwrap_or_default();
        if recorded.trim() != digest(&body) {
            warn(&path, "digest mismatch");
            return None;
        }
        match SequenceTable::<T>::parse_file(&body) {
            Ok(t) if t.n_max() == Some(key.n_max) => Some(t),
            Ok(_) => {
                warn(&path, "wrong length");
                None
            }
            Err(e) => {
                warn(&path, &e.to_string());
                None
            }
        }
    }

    pub fn store<T: SeqValue>(&self, key: &Key, table: &SequenceTable<T>) -> std::io::Result<()> {
        let body = table.to_file_string();
        write_atomic(&self.entry_path(key), body.as_bytes())?;
        write_atomic(&self.digest_path(key), format!("{}\n", digest(&body)).as_bytes())
    }

    pub fn get_or_compute<T: SeqValue>(
        &self,
        key: &Key,
        compute: impl FnOnce() -> SequenceTable<T>,
    ) -> std::io::Result<SequenceTable<T>> {
        if let Some(t) = self.lookup(key) {
            return Ok(t);
        }
        let t = compute();
        self.store(key, &t)?;
        Ok(t)
    }
}

fn warn(path: &Path, why: &str) {
    eprintln!(
        "{}",
        serde_json::json!({
            "warning": {"kind": "cache", "path": path.display().to_string(), "message": format!("{why}; regenerating")}
        })
    );
}

/// Uses the cache when one is configured, otherwise just computes.
pub fn cached<T: SeqValue>(
    cache: Option<&Cache>,
    key: &Key,
    compute: impl FnOnce() -> SequenceTable<T>,
) -> std::io::Result<SequenceTable<T>> {
    match cache {
        Some(c) => c.get_or_compute(key, compute),
        None => Ok(compute()),
    }
}
