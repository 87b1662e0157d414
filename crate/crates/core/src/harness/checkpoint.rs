use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::sweep::SweepSummary;
use super::HarnessError;

const VERSION: u32 = 1;

/// Everything that determines which records a sweep emits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointConfig {
    pub source: String,
    pub p: Option<usize>,
    pub shards: usize,
    pub shard: usize,
    pub summary_only: bool,
}

impl CheckpointConfig {
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    fn describe(&self) -> String {
        format!(
            "source={} p={:?} shard={}/{} summary_only={}",
            self.source, self.p, self.shard, self.shards, self.summary_only
        )
    }
}

/// Progress after the last fully processed prefix of work units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub config_hash: String,
    pub config: CheckpointConfig,
    pub units_completed: usize,
    /// Byte length of the record file at `units_completed`.
    pub output_offset: Option<u64>,
    pub summary: SweepSummary,
}

impl Checkpoint {
    pub fn new(config: CheckpointConfig, units_completed: usize, output_offset: Option<u64>, summary: SweepSummary) -> Self {
        Checkpoint { version: VERSION, config_hash: config.hash(), config, units_completed, output_offset, summary }
    }

    /// Loads a checkpoint, `Ok(None)` if the file does not exist.
    pub fn load(path: &Path, current: &CheckpointConfig) -> Result<Option<Checkpoint>, HarnessError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(HarnessError::io(format!("reading checkpoint {}", path.display()), e)),
        };
        let ck: Checkpoint =
            serde_json::from_str(&text).map_err(|e| HarnessError::CheckpointCorrupt(format!("{}: {e}", path.display())))?;
        if ck.version != VERSION {
            return Err(HarnessError::CheckpointCorrupt(format!("unsupported version {}", ck.version)));
        }
        if ck.config.hash() != ck.config_hash {
            return Err(HarnessError::CheckpointCorrupt("configuration hash does not match".into()));
        }
        if ck.units_completed != ck.summary.units_completed {
            return Err(HarnessError::CheckpointCorrupt("cursor disagrees with summary".into()));
        }
        if &ck.config != current {
            return Err(HarnessError::ConfigMismatch { stored: ck.config.describe(), current: current.describe() });
        }
        Ok(Some(ck))
    }

    /// Writes atomically via a sibling temporary file.
    pub fn store(&self, path: &Path) -> Result<(), HarnessError> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        fs::write(&tmp, text).map_err(|e| HarnessError::io(format!("writing checkpoint {}", tmp.display()), e))?;
        fs::rename(&tmp, path).map_err(|e| HarnessError::io(format!("replacing checkpoint {}", path.display()), e))
    }
}
