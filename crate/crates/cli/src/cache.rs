//! Append-only JSON-lines result cache. The cache only ever saves work:
//! a missing, unreadable or corrupt file behaves like an empty cache.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::record::{ResultRecord, TOOL_VERSION};

pub const CACHE_ENV: &str = "PPTLAB_CACHE";
const FILE_NAME: &str = "pptlab-cache.jsonl";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    version: String,
    record: ResultRecord,
}

pub struct Cache {
    path: PathBuf,
    version: String,
    writer: Mutex<()>,
}

fn warn(msg: impl std::fmt::Display) {
    eprintln!("warning: cache: {msg}");
}

impl Cache {
    /// Opens (creating if needed) the cache in `dir`. Returns None, with a
    /// warning, if the directory cannot be used.
    pub fn open(dir: &Path) -> Option<Cache> {
        Self::open_versioned(dir, TOOL_VERSION)
    }

    /// Like [`Cache::open`] but with an explicit version tag; entries written
    /// under any other version are ignored.
    pub fn open_versioned(dir: &Path, version: &str) -> Option<Cache> {
        if let Err(e) = fs::create_dir_all(dir) {
            warn(format!("cannot create {}: {e}; continuing without cache", dir.display()));
            return None;
        }
        Some(Cache {
            path: dir.join(FILE_NAME),
            version: version.to_string(),
            writer: Mutex::new(()),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &str) -> Option<ResultRecord> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                warn(format!("cannot read {}: {e}", self.path.display()));
                return None;
            }
        };
        let mut found = None;
        for (n, line) in BufReader::new(file).lines().enumerate() {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    warn(format!("read error at line {}: {e}", n + 1));
                    break;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<Entry>(&line) {
                Ok(entry) if entry.key == key && entry.version == self.version => {
                    found = Some(entry.record);
                }
                Ok(_) => {}
                Err(e) => warn(format!("skipping corrupt line {}: {e}", n + 1)),
            }
        }
        found
    }

    pub fn put(&self, key: &str, record: &ResultRecord) {
        let entry = Entry {
            key: key.to_string(),
            version: self.version.clone(),
            record: record.clone(),
        };
        let mut line = serde_json::to_string(&entry).expect("record serializes");
        line.push('\n');
        let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        let result = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .and_then(|mut f| f.write_all(line.as_bytes()));
        if let Err(e) = result {
            warn(format!("cannot write {}: {e}", self.path.display()));
        }
    }
}
