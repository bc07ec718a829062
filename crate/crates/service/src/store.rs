//! Session persistence.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use parking_lot::Mutex;
use thiserror::Error;

use crate::session::SessionRecord;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("session storage I/O on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt session file {path}: {source}")]
    Corrupt {
        path: PathBuf,
        source: serde_json::Error,
    },
}

/// Where sessions are snapshotted after every accepted mutation.
pub trait SessionStore: Send + Sync {
    fn load_all(&self) -> Result<Vec<SessionRecord>, StoreError>;
    fn save(&self, record: &SessionRecord) -> Result<(), StoreError>;
}

/// Keeps snapshots in process memory; nothing survives a restart.
#[derive(Debug, Default)]
pub struct MemoryStore {
    records: Mutex<BTreeMap<String, SessionRecord>>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self::default()
    }
}

impl SessionStore for MemoryStore {
    fn load_all(&self) -> Result<Vec<SessionRecord>, StoreError> {
        Ok(self.records.lock().values().cloned().collect())
    }

    fn save(&self, record: &SessionRecord) -> Result<(), StoreError> {
        self.records
            .lock()
            .insert(record.session_id.clone(), record.clone());
        Ok(())
    }
}

/// One JSON file per session in a directory. Each save writes a temporary
/// file and renames it over the old snapshot.
#[derive(Debug)]
pub struct FileStore {
    dir: PathBuf,
}

impl FileStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| StoreError::Io {
            path: dir.clone(),
            source,
        })?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, session_id: &str) -> PathBuf {
        self.dir.join(format!("{session_id}.session.json"))
    }
}

impl SessionStore for FileStore {
    fn load_all(&self) -> Result<Vec<SessionRecord>, StoreError> {
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source| StoreError::Io { path, source }
        };
        let mut paths: Vec<PathBuf> = fs::read_dir(&self.dir)
            .map_err(io_err(&self.dir))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.to_string_lossy().ends_with(".session.json"))
            .collect();
        paths.sort();
        paths
            .into_iter()
            .map(|path| {
                let text = fs::read_to_string(&path).map_err(io_err(&path))?;
                serde_json::from_str(&text).map_err(|source| StoreError::Corrupt { path, source })
            })
            .collect()
    }

    fn save(&self, record: &SessionRecord) -> Result<(), StoreError> {
        let path = self.path_for(&record.session_id);
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(record).expect("session records are plain data");
        fs::write(&tmp, text).map_err(|source| StoreError::Io {
            path: tmp.clone(),
            source,
        })?;
        fs::rename(&tmp, &path).map_err(|source| StoreError::Io { path, source })
    }
}
