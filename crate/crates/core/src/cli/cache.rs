//! Content-addressed on-disk cache of class atom tables.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::spec::{BlockSpec, MonoidSpec, ALGORITHM_VERSION};
use crate::blockmonoid::{enumerate_class_atoms, ClassAtomTable, ClassSequence, LabeledMonoid};
use crate::error::{Error, Result};

/// Overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "KRULL_CACHE_DIR";

const PREFIX: &str = "atoms-";

/// How a table was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CacheStatus {
    Hit,
    Miss,
    /// A cached file failed its checks and was replaced.
    Rebuilt,
    Disabled,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    algorithm: String,
    spec: Value,
    spec_hash: String,
    group: Vec<u64>,
    support: Vec<Vec<u64>>,
    atoms: Vec<ClassSequence>,
    checksum: String,
}

/// One row of `cache ls`.
#[derive(Debug, Clone, Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub spec_hash: Option<String>,
    pub spec: Option<Value>,
    pub atoms: Option<usize>,
    pub bytes: u64,
    pub valid: bool,
}

#[derive(Debug, Clone)]
pub struct AtomCache {
    dir: PathBuf,
}

fn checksum(atoms: &[ClassSequence]) -> Result<String> {
    let bytes = serde_json::to_vec(atoms)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

impl AtomCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        AtomCache { dir: dir.into() }
    }

    /// `$KRULL_CACHE_DIR`, else `$XDG_CACHE_HOME/krull`, else `~/.cache/krull`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("krull")))
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache/krull")))
            .unwrap_or_else(|| PathBuf::from(".krull-cache"));
        Self::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{PREFIX}{hash}.json"))
    }

    /// The class atom table of a block spec, from disk when a valid entry
    /// exists. Entries whose hash, checksum or atoms disagree are rebuilt.
    pub fn class_atoms(&self, spec: &BlockSpec) -> Result<(ClassAtomTable, CacheStatus)> {
        let wrapped = MonoidSpec::Block(spec.clone());
        let hash = wrapped.hash()?;
        let monoid = match wrapped.build()? {
            super::spec::Monoid::Labeled(m) => m,
            _ => unreachable!("block spec"),
        };
        let path = self.path(&hash);
        let mut status = CacheStatus::Miss;
        if path.exists() {
            match self.load(&path, &hash, &monoid) {
                Ok(table) => return Ok((table, CacheStatus::Hit)),
                Err(_) => status = CacheStatus::Rebuilt,
            }
        }
        let table = monoid.class_atoms()?;
        self.store(&path, &wrapped, &hash, &table)?;
        Ok((table, status))
    }

    fn load(&self, path: &Path, hash: &str, monoid: &LabeledMonoid) -> Result<ClassAtomTable> {
        let file: CacheFile = serde_json::from_slice(&fs::read(path)?)?;
        let bad = |why: &str| Err(Error::Spec(format!("stale cache entry: {why}")));
        if file.format != 1 || file.algorithm != ALGORITHM_VERSION || file.spec_hash != hash {
            return bad("header mismatch");
        }
        if checksum(&file.atoms)? != file.checksum {
            return bad("checksum mismatch");
        }
        let group = monoid.group();
        if file.group != group.invariant_factors() {
            return bad("group mismatch");
        }
        let mut support: Vec<_> = monoid.classes().to_vec();
        support.sort();
        let stored: Vec<Vec<u64>> = support.iter().map(|g| g.coords().to_vec()).collect();
        if file.support != stored {
            return bad("support mismatch");
        }
        for a in &file.atoms {
            if a.support().any(|g| support.binary_search(g).is_err()) {
                return bad("atom outside the support");
            }
        }
        Ok(ClassAtomTable::from_parts(group.clone(), support, file.atoms))
    }

    fn store(&self, path: &Path, spec: &MonoidSpec, hash: &str, table: &ClassAtomTable) -> Result<()> {
        let file = CacheFile {
            format: 1,
            algorithm: ALGORITHM_VERSION.into(),
            spec: serde_json::to_value(spec.canonical()?)?,
            spec_hash: hash.into(),
            group: table.group().invariant_factors().to_vec(),
            support: table.support().iter().map(|g| g.coords().to_vec()).collect(),
            atoms: table.atoms().to_vec(),
            checksum: checksum(table.atoms())?,
        };
        let bytes = serde_json::to_vec(&serde_json::to_value(&file)?)?;
        write_atomic(path, &bytes)
    }

    fn files(&self) -> Result<Vec<PathBuf>> {
        if !self.dir.exists() {
            return Ok(Vec::new());
        }
        let mut out: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with(PREFIX) && n.ends_with(".json"))
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn list(&self) -> Result<Vec<CacheEntry>> {
        self.files()?
            .into_iter()
            .map(|p| {
                let bytes = fs::metadata(&p)?.len();
                let name = p.file_name().unwrap().to_string_lossy().into_owned();
                let parsed: Option<CacheFile> =
                    fs::read(&p).ok().and_then(|b| serde_json::from_slice(&b).ok());
                Ok(match parsed {
                    Some(f) => {
                        let valid = checksum(&f.atoms).is_ok_and(|c| c == f.checksum)
                            && name == format!("{PREFIX}{}.json", f.spec_hash);
                        CacheEntry {
                            file: name,
                            atoms: Some(f.atoms.len()),
                            spec_hash: Some(f.spec_hash),
                            spec: Some(f.spec),
                            bytes,
                            valid,
                        }
                    }
                    None => CacheEntry {
                        file: name,
                        spec_hash: None,
                        spec: None,
                        atoms: None,
                        bytes,
                        valid: false,
                    },
                })
            })
            .collect()
    }

    /// Removes every cache entry; returns how many were removed.
    pub fn purge(&self) -> Result<usize> {
        let files = self.files()?;
        for p in &files {
            fs::remove_file(p)?;
        }
        Ok(files.len())
    }
}

/// Writes through a temporary file in the target directory and renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Enumerates without touching the disk.
pub fn uncached_class_atoms(spec: &BlockSpec) -> Result<ClassAtomTable> {
    let group = spec.group()?;
    match MonoidSpec::Block(spec.clone()).build()? {
        super::spec::Monoid::Labeled(m) => enumerate_class_atoms(&group, m.classes()),
        _ => unreachable!("block spec"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(moduli: &[u64]) -> BlockSpec {
        BlockSpec {
            group: moduli.to_vec(),
            primes: None,
        }
    }

    #[test]
    fn hit_after_miss_and_equal_tables() {
        let dir = tempfile::tempdir().unwrap();
        let cache = AtomCache::new(dir.path());
        let (fresh, s1) = cache.class_atoms(&spec(&[2, 4])).unwrap();
        let (cached, s2) = cache.class_atoms(&spec(&[4, 2])).unwrap();
        assert_eq!((s1, s2), (CacheStatus::Miss, CacheStatus::Hit));
        assert_eq!(fresh, cached);
        assert_eq!(cached, uncached_class_atoms(&spec(&[2, 4])).unwrap());
        assert_eq!(cache.list().unwrap().len(), 1);
        assert!(cache.list().unwrap()[0].valid);
    }

    #[test]
    fn tampered_entry_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = AtomCache::new(dir.path());
        let (fresh, _) = cache.class_atoms(&spec(&[5])).unwrap();
        let path = cache.files().unwrap().remove(0);
        let mut v: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        v["atoms"].as_array_mut().unwrap().pop();
        fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
        assert!(!cache.list().unwrap()[0].valid);
        let (again, status) = cache.class_atoms(&spec(&[5])).unwrap();
        assert_eq!(status, CacheStatus::Rebuilt);
        assert_eq!(again, fresh);
        assert_eq!(cache.purge().unwrap(), 1);
        assert!(cache.list().unwrap().is_empty());
    }
}
