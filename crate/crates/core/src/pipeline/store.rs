//! On-disk class store: one JSON record per line, plus a progress file
//! recording which stages have run.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::StageStats;
use crate::error::{Error, Result};

pub const STORE_VERSION: u32 = 1;
pub(crate) const CLASSES_FILE: &str = "classes.jsonl";
const PROGRESS_FILE: &str = "progress.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub version: u32,
    pub stage: String,
    pub stage_index: usize,
    /// SHA-256 of `polynomial`, hex.
    pub key_digest: String,
    pub members: Vec<String>,
    /// The class key at `stage`; canonical polynomial text for polynomial
    /// stages.
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progress {
    pub version: u32,
    pub n: usize,
    pub q: usize,
    pub input_graphs: usize,
    /// Completed stages, in order.
    pub stages: Vec<StageStats>,
}

pub(crate) fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Writes through a temporary file so a crash never leaves a half-written
/// store behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_classes(path: &Path, records: &[ClassRecord]) -> Result<()> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

pub fn read_classes(path: &Path) -> Result<Vec<ClassRecord>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(line).map_err(|e| Error::CorruptRecord {
            line: i + 1,
            msg: e.to_string(),
        })?;
        check_version(&value, i + 1)?;
        let record: ClassRecord = serde_json::from_value(value).map_err(|e| Error::CorruptRecord {
            line: i + 1,
            msg: e.to_string(),
        })?;
        if digest(&record.polynomial) != record.key_digest {
            return Err(Error::CorruptRecord {
                line: i + 1,
                msg: "key digest does not match".into(),
            });
        }
        out.push(record);
    }
    Ok(out)
}

fn check_version(value: &serde_json::Value, line: usize) -> Result<()> {
    match value.get("version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == u64::from(STORE_VERSION) => Ok(()),
        Some(v) => Err(Error::VersionMismatch {
            found: v as u32,
            expected: STORE_VERSION,
        }),
        None => Err(Error::CorruptRecord {
            line,
            msg: "missing version".into(),
        }),
    }
}

pub fn write_progress(dir: &Path, progress: &Progress) -> Result<()> {
    let text = serde_json::to_string_pretty(progress).expect("progress serializes") + "\n";
    write_atomic(&dir.join(PROGRESS_FILE), text.as_bytes())
}

/// `None` when the directory holds no progress file.
pub fn read_progress(dir: &Path) -> Result<Option<Progress>> {
    let path = dir.join(PROGRESS_FILE);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::CorruptRecord {
        line: 1,
        msg: e.to_string(),
    })?;
    check_version(&value, 1)?;
    let progress = serde_json::from_value(value).map_err(|e| Error::CorruptRecord {
        line: 1,
        msg: e.to_string(),
    })?;
    Ok(Some(progress))
}
