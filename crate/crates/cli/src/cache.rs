//! Persistent store of lower Bruhat intervals of double cosets.
//!
//! Layout: `<dir>/<datum key>/<entry key>.json`, where the datum key hashes
//! the canonical datum string together with the interval cap and the entry
//! key additionally hashes the facet and representative. Lookup counters are
//! accumulated in `<dir>/stats.json`.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use parahoric_core::affine_weyl::{AffineWeylGroup, DoubleCosetIndex};
use parahoric_core::notation::{format_translation_form, parse_element};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Entry {
    datum: String,
    cap: usize,
    facet: Vec<usize>,
    rep: String,
    interval: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
struct Counters {
    hits: u64,
    misses: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CacheStats {
    pub dir: String,
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
    pub hit_rate: f64,
}

pub struct DiskCache {
    dir: PathBuf,
}

fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

/// Interval data belonging to one datum and cap, with the keys already on disk.
pub struct Session {
    datum: String,
    cap: usize,
    known: HashSet<(Vec<usize>, String)>,
    start: (usize, usize),
}

impl DiskCache {
    pub fn open(dir: &Path) -> CliResult<Self> {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::io(format!("creating cache dir {}", dir.display()), e))?;
        Ok(DiskCache {
            dir: dir.to_path_buf(),
        })
    }

    fn datum_dir(&self, datum: &str, cap: usize) -> PathBuf {
        self.dir.join(&digest(&[datum, &cap.to_string()])[..32])
    }

    fn entry_path(&self, datum: &str, cap: usize, facet: &[usize], rep: &str) -> PathBuf {
        let facet = format!("{facet:?}");
        let key = digest(&[datum, &cap.to_string(), &facet, rep]);
        self.datum_dir(datum, cap).join(format!("{key}.json"))
    }

    /// Seeds the group's interval memo with every stored entry for its datum.
    pub fn load(&self, group: &AffineWeylGroup) -> CliResult<Session> {
        let datum = group.datum().cartan().canonical_string();
        let cap = group.interval_cap();
        let mut known = HashSet::new();
        let dir = self.datum_dir(&datum, cap);
        if dir.is_dir() {
            let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
                .map_err(|e| CliError::io(format!("reading {}", dir.display()), e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            for path in paths {
                let text = fs::read_to_string(&path)
                    .map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
                // unreadable entries are ignored and recomputed
                let Ok(entry) = serde_json::from_str::<Entry>(&text) else {
                    continue;
                };
                if entry.datum != datum || entry.cap != cap {
                    continue;
                }
                let rep = parse_element(group, &entry.rep)?;
                let interval = entry
                    .interval
                    .iter()
                    .map(|s| parse_element(group, s).map(DoubleCosetIndex::from_canonical))
                    .collect::<Result<Vec<_>, _>>()?;
                group.seed_interval(&entry.facet, &rep, interval);
                known.insert((entry.facet, entry.rep));
            }
        }
        Ok(Session {
            datum,
            cap,
            known,
            start: group.interval_cache_counters(),
        })
    }

    /// Writes intervals computed during the session and updates counters.
    /// Returns the number of new entries.
    pub fn store(&self, group: &AffineWeylGroup, session: &Session) -> CliResult<usize> {
        let dir = self.datum_dir(&session.datum, session.cap);
        fs::create_dir_all(&dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
        let mut written = 0;
        for (facet, rep, interval) in group.cached_intervals() {
            let rep = format_translation_form(group, &rep);
            if session.known.contains(&(facet.clone(), rep.clone())) {
                continue;
            }
            let entry = Entry {
                datum: session.datum.clone(),
                cap: session.cap,
                facet,
                rep,
                interval: interval
                    .iter()
                    .map(|d| format_translation_form(group, d.rep()))
                    .collect(),
            };
            let path = self.entry_path(&entry.datum, entry.cap, &entry.facet, &entry.rep);
            let text = serde_json::to_string(&entry).expect("entry serializes");
            fs::write(&path, text).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
            written += 1;
        }
        let (hits, misses) = group.interval_cache_counters();
        let mut counters = self.counters()?;
        counters.hits += (hits - session.start.0) as u64;
        counters.misses += (misses - session.start.1) as u64;
        let path = self.dir.join("stats.json");
        fs::write(&path, serde_json::to_string(&counters).expect("counters serialize"))
            .map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
        Ok(written)
    }

    fn counters(&self) -> CliResult<Counters> {
        let path = self.dir.join("stats.json");
        match fs::read_to_string(&path) {
            Ok(text) => Ok(serde_json::from_str(&text).unwrap_or_default()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Counters::default()),
            Err(e) => Err(CliError::io(format!("reading {}", path.display()), e)),
        }
    }

    pub fn stats(&self) -> CliResult<CacheStats> {
        let mut entries = 0;
        let read = |p: &Path| fs::read_dir(p).map_err(|e| CliError::io(format!("reading {}", p.display()), e));
        for sub in read(&self.dir)? {
            let sub = sub.map_err(|e| CliError::io("listing cache", e))?.path();
            if sub.is_dir() {
                entries += read(&sub)?
                    .filter_map(|e| e.ok())
                    .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
                    .count();
            }
        }
        let c = self.counters()?;
        let total = c.hits + c.misses;
        Ok(CacheStats {
            dir: self.dir.display().to_string(),
            entries,
            hits: c.hits,
            misses: c.misses,
            hit_rate: if total == 0 { 0.0 } else { c.hits as f64 / total as f64 },
        })
    }

    /// Removes all entries and counters. Clearing an empty cache is a no-op.
    pub fn clear(&self) -> CliResult<usize> {
        let removed = self.stats()?.entries;
        for item in fs::read_dir(&self.dir).map_err(|e| CliError::io("listing cache", e))? {
            let path = item.map_err(|e| CliError::io("listing cache", e))?.path();
            let result = if path.is_dir() {
                fs::remove_dir_all(&path)
            } else {
                fs::remove_file(&path)
            };
            result.map_err(|e| CliError::io(format!("removing {}", path.display()), e))?;
        }
        Ok(removed)
    }
}
