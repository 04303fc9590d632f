//! Persistent results, one JSON file per input digest.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::report::{JobRecord, SCHEMA};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    schema: u32,
    record: JobRecord,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    fn path(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("{digest}.json"))
    }

    /// A stored record for `digest`. Unreadable or mismatched entries count
    /// as misses.
    pub fn get(&self, digest: &str) -> Option<JobRecord> {
        let text = fs::read_to_string(self.path(digest)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.schema == SCHEMA && entry.record.inputs_digest == digest).then_some(entry.record)
    }

    pub fn put(&self, record: &JobRecord) -> io::Result<()> {
        let entry = Entry {
            schema: SCHEMA,
            record: record.clone(),
        };
        let text = serde_json::to_string_pretty(&entry).map_err(io::Error::other)?;
        let path = self.path(&record.inputs_digest);
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(tmp, path)
    }
}
