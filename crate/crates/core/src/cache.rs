//! Append-only JSON-lines store of σ witnesses.
//!
//! Entries are never trusted: every hit is recounted and its mask
//! re-realized, and entries that fail are skipped and counted.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::fmt_ratio;
use crate::lattice::{Exactness, SigmaRecord, SigmaResult};

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "LCTCERT_CACHE";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache encoding: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub n: usize,
    pub lambda: String,
    pub strict: bool,
}

impl CacheKey {
    pub fn new(n: usize, lambda: &BigRational, strict: bool) -> Self {
        Self { n, lambda: fmt_ratio(lambda), strict }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaCacheEntry {
    pub key: CacheKey,
    pub result: SigmaRecord,
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Debug)]
pub struct SigmaCache {
    path: PathBuf,
    entries: Vec<SigmaCacheEntry>,
    /// Lines that did not parse.
    pub unreadable: usize,
    /// Entries whose witness failed re-verification on lookup.
    pub rejected: usize,
}

impl SigmaCache {
    /// Loads `path`, treating a missing file as empty.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let mut entries = Vec::new();
        let mut unreadable = 0;
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<SigmaCacheEntry>(&line) {
                    Ok(e) => entries.push(e),
                    Err(_) => unreadable += 1,
                }
            }
        }
        Ok(Self { path, entries, unreadable, rejected: 0 })
    }

    pub fn default_path() -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV).map(PathBuf::from)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Best verified entry for the key: exact results first, then the
    /// smallest value.
    pub fn get(&mut self, n: usize, lambda: &BigRational, strict: bool) -> Option<SigmaResult> {
        let key = CacheKey::new(n, lambda, strict);
        let mut best: Option<SigmaResult> = None;
        for e in self.entries.iter().filter(|e| e.key == key) {
            let checked = SigmaResult::from_record(&e.result)
                .ok()
                .filter(|r| r.n == n && &r.lambda == lambda && r.strict == strict && r.verify().is_ok());
            let Some(r) = checked else {
                self.rejected += 1;
                continue;
            };
            let rank = |r: &SigmaResult| (r.exactness != Exactness::Exact, r.value.clone());
            if best.as_ref().is_none_or(|b| rank(&r) < rank(b)) {
                best = Some(r);
            }
        }
        best
    }

    /// Appends one line; callers serialize writes.
    pub fn put(&mut self, result: &SigmaResult) -> Result<(), CacheError> {
        let entry = SigmaCacheEntry {
            key: CacheKey::new(result.n, &result.lambda, result.strict),
            result: result.to_record(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        };
        let mut line = serde_json::to_string(&entry)?;
        line.push('\n');
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.write_all(line.as_bytes())?;
        self.entries.push(entry);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::lattice::sigma_exact_2d;

    #[test]
    fn round_trip_and_recount() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sigma.jsonl");
        let r = sigma_exact_2d(2, true).unwrap();
        {
            let mut c = SigmaCache::open(&path).unwrap();
            assert!(c.get(2, &int(2), true).is_none());
            c.put(&r).unwrap();
        }
        let mut c = SigmaCache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(2, &int(2), true), Some(r));
        assert!(c.get(2, &int(2), false).is_none());
    }

    #[test]
    fn tampered_entries_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sigma.jsonl");
        let mut r = sigma_exact_2d(1, true).unwrap();
        r.value -= 1u32;
        let mut c = SigmaCache::open(&path).unwrap();
        c.put(&r).unwrap();
        std::fs::OpenOptions::new().append(true).open(&path).unwrap().write_all(b"{not json\n").unwrap();
        let mut c = SigmaCache::open(&path).unwrap();
        assert_eq!(c.unreadable, 1);
        assert!(c.get(2, &int(1), true).is_none());
        assert_eq!(c.rejected, 1);
    }
}
