use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::record::Verdict;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub key: u64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub schema_version: u32,
    pub task: String,
    pub param_hash: String,
    /// Last key of the completed prefix; `None` before the first wave.
    pub cursor: Option<u64>,
    /// Report length covering exactly the completed prefix.
    pub report_bytes: u64,
    pub tallies: BTreeMap<String, u64>,
    /// Keys with violation or undecided verdicts.
    pub findings: Vec<Finding>,
}

impl Checkpoint {
    pub fn new(task: &str, param_hash: String) -> Self {
        Checkpoint {
            schema_version: SCHEMA_VERSION,
            task: task.to_string(),
            param_hash,
            cursor: None,
            report_bytes: 0,
            tallies: BTreeMap::new(),
            findings: Vec::new(),
        }
    }
}

/// Writes to a sibling temp file, syncs, then renames over `path`.
pub fn save(path: &Path, state: &Checkpoint) -> Result<(), CliError> {
    let tmp = temp_path(path);
    let bytes = serde_json::to_vec_pretty(state).map_err(|e| CliError::Io(e.into()))?;
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<Checkpoint, CliError> {
    let corrupt = |reason: String| CliError::CorruptCheckpoint { path: path.to_path_buf(), reason };
    let bytes = fs::read(path)?;
    let state: Checkpoint = serde_json::from_slice(&bytes).map_err(|e| corrupt(e.to_string()))?;
    if state.schema_version != SCHEMA_VERSION {
        return Err(corrupt(format!("schema version {} (expected {SCHEMA_VERSION})", state.schema_version)));
    }
    Ok(state)
}

/// Loads `path` and checks that it belongs to this task and parameter set.
pub fn load_matching(path: &Path, task: &str, param_hash: &str) -> Result<Checkpoint, CliError> {
    let state = load(path)?;
    if state.task != task || state.param_hash != param_hash {
        return Err(CliError::HashMismatch {
            path: path.to_path_buf(),
            found: format!("{}:{}", state.task, state.param_hash),
            expected: format!("{task}:{param_hash}"),
        });
    }
    Ok(state)
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".tmp");
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Checkpoint {
        let mut c = Checkpoint::new("conj2-scan", "ab".repeat(32));
        c.cursor = Some(2500);
        c.report_bytes = 12345;
        c.tallies.insert("witness".into(), 2494);
        c.tallies.insert("fast_path".into(), 2494);
        c.findings.push(Finding { key: 9, verdict: Verdict::Undecided });
        c
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ckpt");
        let c = sample();
        save(&path, &c).unwrap();
        assert_eq!(load(&path).unwrap(), c);
        assert!(!temp_path(&path).exists());
        assert_eq!(load_matching(&path, "conj2-scan", &"ab".repeat(32)).unwrap(), c);
    }

    #[test]
    fn refuses_other_parameters() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ckpt");
        save(&path, &sample()).unwrap();
        let err = load_matching(&path, "conj2-scan", &"cd".repeat(32)).unwrap_err();
        assert!(matches!(err, CliError::HashMismatch { .. }));
        assert_eq!(err.exit_code(), 2);
        let err = load_matching(&path, "kanold-scan", &"ab".repeat(32)).unwrap_err();
        assert!(matches!(err, CliError::HashMismatch { .. }));
    }

    #[test]
    fn rejects_corrupt_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ckpt");
        fs::write(&path, b"{ not json").unwrap();
        assert!(matches!(load(&path), Err(CliError::CorruptCheckpoint { .. })));
        let mut c = sample();
        c.schema_version = 99;
        fs::write(&path, serde_json::to_vec(&c).unwrap()).unwrap();
        assert!(matches!(load(&path), Err(CliError::CorruptCheckpoint { .. })));
    }
}
