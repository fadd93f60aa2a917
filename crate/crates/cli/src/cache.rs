//! Persistent store for the intersection-number cache: one
//! `n;e1,…;k1,…;p/q` record per line, appended after every run.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use omega_core::genus0::intersect::{IntersectionCache, IntersectionKey};
use omega_core::Error;

pub struct CacheFile {
    path: PathBuf,
    known: HashSet<IntersectionKey>,
}

impl CacheFile {
    /// Loads every record into the process-wide cache. A missing file is an
    /// empty cache; a malformed line is an error naming the line.
    pub fn load(path: &Path) -> Result<Self, Error> {
        let mut known = HashSet::new();
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(Error::InvalidInput(format!("cannot read cache {}: {e}", path.display()))),
        };
        let cache = IntersectionCache::global();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = IntersectionKey::from_record(line)
                .map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), i + 1)))?;
            cache.insert(key.clone(), value);
            known.insert(key);
        }
        Ok(CacheFile { path: path.to_path_buf(), known })
    }

    pub fn loaded(&self) -> u64 {
        self.known.len() as u64
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends the entries computed since loading; returns how many.
    pub fn append_new(&mut self) -> io::Result<u64> {
        let fresh: Vec<_> = IntersectionCache::global()
            .snapshot()
            .into_iter()
            .filter(|(k, _)| !self.known.contains(k))
            .collect();
        if fresh.is_empty() {
            return Ok(0);
        }
        let mut out = String::new();
        for (k, v) in &fresh {
            out.push_str(&k.to_record(v));
            out.push('\n');
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.write_all(out.as_bytes())?;
        let n = fresh.len() as u64;
        self.known.extend(fresh.into_iter().map(|(k, _)| k));
        Ok(n)
    }
}
