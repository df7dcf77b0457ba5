//! On-disk cache: one JSON file per computed artifact, wrapped in an
//! envelope carrying a SHA-256 of the record's compact JSON. A file that
//! is missing, unparsable, or fails the hash check is treated as absent
//! by the compute paths; `verify` additionally reports it.
//!
//! Writes go to a temporary file in the same directory followed by an
//! atomic rename, so concurrent invocations sharing a cache directory
//! never observe a half-written file.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::records::{PolynomialRecord, SequenceRecord};

pub const CACHE_DIR_ENV: &str = "LISCOUNT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    sha256: String,
    record: T,
}

pub enum CacheEntry<T> {
    Missing,
    Valid(T),
    Corrupt(String),
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Resolution order: $LISCOUNT_CACHE_DIR, $XDG_CACHE_HOME/liscount,
    /// $HOME/.cache/liscount. None (caching disabled) if nothing resolves.
    pub fn resolve() -> Option<Cache> {
        let dir = if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
            PathBuf::from(dir)
        } else if let Ok(xdg) = std::env::var("XDG_CACHE_HOME") {
            Path::new(&xdg).join("liscount")
        } else if let Ok(home) = std::env::var("HOME") {
            Path::new(&home).join(".cache").join("liscount")
        } else {
            return None;
        };
        Some(Cache { dir })
    }

    #[cfg(test)]
    pub fn at(dir: &Path) -> Cache {
        Cache {
            dir: dir.to_path_buf(),
        }
    }

    pub fn sequence_path(&self, d: usize) -> PathBuf {
        self.dir.join(format!("det_d{d}.json"))
    }

    pub fn polynomial_path(&self, r: usize) -> PathBuf {
        self.dir.join(format!("bpoly_r{r}.json"))
    }

    /// Thresholds d of the sequence entries present on disk, sorted.
    /// Files that do not match the det_d{d}.json pattern are ignored.
    pub fn sequence_ids(&self) -> Vec<usize> {
        self.ids("det_d")
    }

    /// Offsets r of the polynomial entries present on disk, sorted.
    pub fn polynomial_ids(&self) -> Vec<usize> {
        self.ids("bpoly_r")
    }

    fn ids(&self, prefix: &str) -> Vec<usize> {
        let Ok(entries) = fs::read_dir(&self.dir) else {
            return Vec::new();
        };
        let mut ids: Vec<usize> = entries
            .filter_map(|entry| entry.ok())
            .filter_map(|entry| {
                let name = entry.file_name().into_string().ok()?;
                name.strip_prefix(prefix)?.strip_suffix(".json")?.parse().ok()
            })
            .collect();
        ids.sort_unstable();
        ids
    }

    pub fn load_sequence(&self, d: usize) -> Option<SequenceRecord> {
        match read_entry(&self.sequence_path(d)) {
            CacheEntry::Valid(rec) => Some(rec),
            _ => None,
        }
    }

    pub fn sequence_entry(&self, d: usize) -> CacheEntry<SequenceRecord> {
        read_entry(&self.sequence_path(d))
    }

    pub fn store_sequence(&self, record: &SequenceRecord) -> Result<()> {
        write_entry(&self.sequence_path(record.d), record)
    }

    pub fn load_polynomial(&self, r: usize) -> Option<PolynomialRecord> {
        match read_entry(&self.polynomial_path(r)) {
            CacheEntry::Valid(rec) => Some(rec),
            _ => None,
        }
    }

    pub fn polynomial_entry(&self, r: usize) -> CacheEntry<PolynomialRecord> {
        read_entry(&self.polynomial_path(r))
    }

    pub fn store_polynomial(&self, record: &PolynomialRecord) -> Result<()> {
        write_entry(&self.polynomial_path(record.r), record)
    }
}

fn digest<T: Serialize>(record: &T) -> String {
    let bytes = serde_json::to_vec(record).expect("records always serialize");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    format!("{:x}", hasher.finalize())
}

fn read_entry<T: DeserializeOwned + Serialize>(path: &Path) -> CacheEntry<T> {
    let bytes = match fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return CacheEntry::Missing,
        Err(e) => return CacheEntry::Corrupt(format!("unreadable: {e}")),
    };
    let envelope: Envelope<T> = match serde_json::from_slice(&bytes) {
        Ok(env) => env,
        Err(e) => return CacheEntry::Corrupt(format!("invalid JSON: {e}")),
    };
    let expected = digest(&envelope.record);
    if envelope.sha256 != expected {
        return CacheEntry::Corrupt(format!(
            "content hash mismatch (stored {}, computed {expected})",
            envelope.sha256
        ));
    }
    CacheEntry::Valid(envelope.record)
}

fn write_entry<T: Serialize>(path: &Path, record: &T) -> Result<()> {
    let dir = path.parent().expect("cache paths always have a parent");
    fs::create_dir_all(dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
    let envelope = Envelope {
        sha256: digest(record),
        record,
    };
    let json = serde_json::to_string(&envelope).expect("records always serialize");
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, json).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::records::Method;
    use num_bigint::BigInt;

    fn scratch_cache() -> (tempfile::TempDir, Cache) {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        (dir, cache)
    }

    #[test]
    fn store_then_load_round_trips() {
        let (_guard, cache) = scratch_cache();
        let record = SequenceRecord::new(3, Method::Det, &[BigInt::from(1), BigInt::from(2)]);
        cache.store_sequence(&record).unwrap();
        assert_eq!(cache.load_sequence(3), Some(record));
        assert!(cache.load_sequence(4).is_none());
    }

    #[test]
    fn tampering_invalidates_the_entry() {
        let (_guard, cache) = scratch_cache();
        let record = SequenceRecord::new(3, Method::Det, &[BigInt::from(1), BigInt::from(2)]);
        cache.store_sequence(&record).unwrap();
        let path = cache.sequence_path(3);
        let tampered = fs::read_to_string(&path).unwrap().replace("\"2\"", "\"7\"");
        fs::write(&path, tampered).unwrap();
        assert!(cache.load_sequence(3).is_none());
        assert!(matches!(
            cache.sequence_entry(3),
            CacheEntry::Corrupt(reason) if reason.contains("hash mismatch")
        ));
    }

    #[test]
    fn directory_scan_lists_matching_entries() {
        let (_guard, cache) = scratch_cache();
        assert!(cache.sequence_ids().is_empty());
        for d in [12, 3] {
            let record = SequenceRecord::new(d, Method::Det, &[BigInt::from(1)]);
            cache.store_sequence(&record).unwrap();
        }
        cache
            .store_polynomial(&PolynomialRecord {
                r: 0,
                coeffs: vec!["1".into()],
            })
            .unwrap();
        fs::write(cache.dir.join("notes.txt"), "not a cache entry").unwrap();
        assert_eq!(cache.sequence_ids(), vec![3, 12]);
        assert_eq!(cache.polynomial_ids(), vec![0]);
    }

    #[test]
    fn polynomial_entries_use_their_own_files() {
        let (_guard, cache) = scratch_cache();
        let record = PolynomialRecord {
            r: 1,
            coeffs: vec!["1".into(), "0".into(), "1".into()],
        };
        cache.store_polynomial(&record).unwrap();
        assert_eq!(cache.load_polynomial(1), Some(record));
        assert!(matches!(cache.polynomial_entry(2), CacheEntry::Missing));
    }
}
