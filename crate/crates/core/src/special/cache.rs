//! On-disk cache of table entries, one decimal string per file named
//! `xilog_<m>_<digits>.txt`, where `digits` is the absolute accuracy
//! (decimals after the point) the value is good to.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rug::Float;

use crate::error::{Error, Result};
use crate::special::bits_for;

#[derive(Debug)]
pub struct XiLogCache {
    dir: PathBuf,
    index: Mutex<BTreeMap<usize, Vec<u32>>>,
}

fn parse_name(name: &str) -> Option<(usize, u32)> {
    let rest = name.strip_prefix("xilog_")?.strip_suffix(".txt")?;
    let (m, d) = rest.split_once('_')?;
    Some((m.parse().ok()?, d.parse().ok()?))
}

impl XiLogCache {
    /// Opens (creating if needed) a cache directory and indexes its files.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let mut index: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for entry in fs::read_dir(&dir)? {
            let entry = entry?;
            if let Some((m, d)) = entry.file_name().to_str().and_then(parse_name) {
                index.entry(m).or_default().push(d);
            }
        }
        for v in index.values_mut() {
            v.sort_unstable();
        }
        Ok(XiLogCache {
            dir,
            index: Mutex::new(index),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, m: usize, digits: u32) -> PathBuf {
        self.dir.join(format!("xilog_{m}_{digits}.txt"))
    }

    /// A stored value for m accurate to at least `digits` decimals, if any.
    /// Returns the value and the accuracy it was stored with.
    pub fn get(&self, m: usize, digits: u32) -> Result<Option<(Float, u32)>> {
        let found = {
            let index = self.index.lock().unwrap_or_else(|e| e.into_inner());
            index
                .get(&m)
                .and_then(|v| v.iter().copied().find(|&d| d >= digits))
        };
        let Some(d) = found else { return Ok(None) };
        let path = self.path_for(m, d);
        let text = fs::read_to_string(&path)?;
        let line = text.lines().next().unwrap_or("").trim();
        let parsed = Float::parse(line).map_err(|_| Error::Cache { path: path.clone() })?;
        let log10_mag = line.split('.').next().map_or(0, |s| s.trim_start_matches('-').len()) as f64;
        let value = Float::with_val(bits_for(f64::from(d), log10_mag), parsed);
        if !value.is_finite() {
            return Err(Error::Cache { path });
        }
        Ok(Some((value, d)))
    }

    /// Stores `value` as accurate to `digits` decimals. The file holds a few
    /// extra decimals so the rounding does not eat into the accuracy.
    pub fn put(&self, m: usize, digits: u32, value: &Float) -> Result<()> {
        let text = crate::scalar::BigFloat::from_float(value.clone()).to_fixed(digits as usize + 4);
        let path = self.path_for(m, digits);
        let tmp = self.dir.join(format!(".xilog_{m}_{digits}.{}.tmp", std::process::id()));
        fs::write(&tmp, format!("{text}\n"))?;
        fs::rename(&tmp, &path)?;
        let mut index = self.index.lock().unwrap_or_else(|e| e.into_inner());
        let v = index.entry(m).or_default();
        if let Err(pos) = v.binary_search(&digits) {
            v.insert(pos, digits);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let cache = XiLogCache::open(dir.path()).unwrap();
        assert!(cache.get(3, 10).unwrap().is_none());
        let x = Float::with_val(200, 2).ln();
        cache.put(3, 40, &x).unwrap();
        let (y, d) = cache.get(3, 20).unwrap().unwrap();
        assert_eq!(d, 40);
        assert!(Float::with_val(200, &x - &y).abs() < 1e-40);
        assert!(cache.get(3, 41).unwrap().is_none());
        // a fresh handle sees the file
        let again = XiLogCache::open(dir.path()).unwrap();
        assert!(again.get(3, 40).unwrap().is_some());
        assert!(dir.path().join("xilog_3_40.txt").exists());
    }

    #[test]
    fn corrupt_entry_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("xilog_5_30.txt"), "garbage\n").unwrap();
        let cache = XiLogCache::open(dir.path()).unwrap();
        assert!(matches!(cache.get(5, 10), Err(Error::Cache { .. })));
    }

    #[test]
    fn unrelated_files_ignored() {
        assert_eq!(parse_name("xilog_12_300.txt"), Some((12, 300)));
        assert_eq!(parse_name("notes.txt"), None);
        assert_eq!(parse_name("xilog_a_3.txt"), None);
    }
}
