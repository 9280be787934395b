//! Append-only JSON Lines store of computed ranks.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::terracini::{RankCache, RankKey};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    #[serde(flatten)]
    pub key: RankKey,
    pub rank: usize,
    pub certified: bool,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl CacheEntry {
    pub fn new(key: RankKey, rank: usize, certified: bool) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Self {
            key,
            rank,
            certified,
            timestamp,
        }
    }
}

type Prefix = (String, String, u64, u64);

fn prefix(key: &RankKey) -> Prefix {
    let (p, s, z, q) = key.prefix();
    (p.to_string(), s.to_string(), z, q)
}

struct State {
    best: HashMap<Prefix, CacheEntry>,
    file: File,
    len: usize,
}

pub struct JsonlCache {
    path: PathBuf,
    state: Mutex<State>,
}

impl JsonlCache {
    /// Open or create the cache at `path`. Unreadable lines are skipped.
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .read(true)
            .open(&path)?;
        let mut best: HashMap<Prefix, CacheEntry> = HashMap::new();
        let mut len = 0;
        for (lineno, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheEntry>(&line) {
                Ok(entry) => {
                    len += 1;
                    insert_best(&mut best, entry);
                }
                Err(e) => log::warn!(
                    "{}:{}: skipping corrupt cache line: {e}",
                    path.display(),
                    lineno + 1
                ),
            }
        }
        Ok(Self {
            path,
            state: Mutex::new(State { best, file, len }),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Number of valid entries.
    pub fn len(&self) -> usize {
        self.lock().len
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Highest-rank entry for the key with any seed.
    pub fn get(&self, key: &RankKey) -> Option<CacheEntry> {
        self.lock().best.get(&prefix(key)).cloned()
    }

    /// Append one entry as a single line.
    pub fn put(&self, entry: CacheEntry) -> io::Result<()> {
        let mut line = serde_json::to_string(&entry).map_err(io::Error::other)?;
        line.push('\n');
        let mut state = self.lock();
        state.file.write_all(line.as_bytes())?;
        state.file.flush()?;
        state.len += 1;
        insert_best(&mut state.best, entry);
        Ok(())
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, State> {
        self.state.lock().unwrap_or_else(|p| p.into_inner())
    }
}

fn insert_best(best: &mut HashMap<Prefix, CacheEntry>, entry: CacheEntry) {
    let slot = best.entry(prefix(&entry.key));
    match slot {
        std::collections::hash_map::Entry::Occupied(mut o) => {
            if entry.rank > o.get().rank {
                o.insert(entry);
            }
        }
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(entry);
        }
    }
}

impl RankCache for JsonlCache {
    fn best(&self, key: &RankKey) -> Option<(usize, u64)> {
        self.get(key).map(|e| (e.rank, e.key.seed))
    }

    fn record(&self, key: &RankKey, rank: usize, certified: bool) {
        if let Err(e) = self.put(CacheEntry::new(key.clone(), rank, certified)) {
            log::warn!("{}: cache write failed: {e}", self.path.display());
        }
    }
}
