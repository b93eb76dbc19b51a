use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use factorisatio::multiplicative::SignatureCache;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub job_id: String,
    pub last_completed_n: u64,
    pub partial_aggregates: serde_json::Value,
    pub cache_snapshot_path: PathBuf,
    pub format_version: u32,
}

/// Checkpoint files for one job: `<dir>/<job_id>.json` plus a cache snapshot.
#[derive(Debug, Clone)]
pub struct Checkpointer {
    dir: PathBuf,
    job_id: String,
    pub every: u64,
    pub halt_after: Option<u64>,
}

fn failure(message: impl Into<String>) -> CliError {
    CliError::new(crate::EXIT_CHECKPOINT, message)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)
}

impl Checkpointer {
    pub fn new(dir: &Path, job_id: &str, every: u64, halt_after: Option<u64>) -> Self {
        Checkpointer { dir: dir.to_path_buf(), job_id: job_id.to_string(), every, halt_after }
    }

    pub fn enabled(&self) -> bool {
        self.every > 0
    }

    pub fn path(&self) -> PathBuf {
        self.dir.join(format!("{}.json", self.job_id))
    }

    fn snapshot_path(&self) -> PathBuf {
        self.dir.join(format!("{}.cache", self.job_id))
    }

    /// The saved state, if a checkpoint exists. Anything unreadable is a
    /// checkpoint failure rather than a silent restart.
    pub fn resume<T: DeserializeOwned>(&self) -> Result<Option<(u64, T, SignatureCache)>, CliError> {
        let path = self.path();
        if !self.enabled() || !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path)
            .map_err(|e| failure(format!("cannot read checkpoint {}: {e}", path.display())))?;
        let ck: Checkpoint = serde_json::from_str(&text)
            .map_err(|e| failure(format!("corrupted checkpoint {}: {e}", path.display())))?;
        if ck.format_version != FORMAT_VERSION {
            return Err(failure(format!(
                "checkpoint {} has format version {}, expected {FORMAT_VERSION}",
                path.display(),
                ck.format_version
            )));
        }
        if ck.job_id != self.job_id {
            return Err(failure(format!("checkpoint {} belongs to job {}", path.display(), ck.job_id)));
        }
        if !ck.cache_snapshot_path.exists() {
            return Err(failure(format!("cache snapshot {} is missing", ck.cache_snapshot_path.display())));
        }
        let cache = SignatureCache::load(&ck.cache_snapshot_path)
            .map_err(|e| failure(format!("corrupted cache snapshot: {e}")))?;
        let tally = serde_json::from_value(ck.partial_aggregates)
            .map_err(|e| failure(format!("corrupted partial aggregates in {}: {e}", path.display())))?;
        Ok(Some((ck.last_completed_n, tally, cache)))
    }

    /// Snapshot first, then the checkpoint that points at it.
    pub fn save<T: Serialize>(&self, last: u64, tally: &T, cache: &SignatureCache) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir).map_err(|e| failure(format!("cannot create {}: {e}", self.dir.display())))?;
        let snapshot = self.snapshot_path();
        cache.save(&snapshot).map_err(|e| failure(format!("cannot write cache snapshot: {e}")))?;
        let ck = Checkpoint {
            job_id: self.job_id.clone(),
            last_completed_n: last,
            partial_aggregates: serde_json::to_value(tally).expect("tally serializes"),
            cache_snapshot_path: snapshot,
            format_version: FORMAT_VERSION,
        };
        let bytes = serde_json::to_vec(&ck).expect("checkpoint serializes");
        write_atomic(&self.path(), &bytes).map_err(|e| failure(format!("cannot write checkpoint: {e}")))?;
        log::info!("checkpoint {} at n = {last}", self.job_id);
        Ok(())
    }

    pub fn clear(&self) {
        let _ = fs::remove_file(self.path());
        let _ = fs::remove_file(self.snapshot_path());
    }
}
