//! Content-addressed result cache. Entries are written to a temporary file
//! in the cache directory and renamed into place.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::{CliError, Outcome};

pub const ENV_VAR: &str = "PRISMA_CACHE_DIR";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// `--cache-dir`, then the environment variable, then the platform
    /// cache directory.
    pub fn locate(explicit: Option<&Path>) -> Option<Cache> {
        if let Some(p) = explicit {
            return Some(Cache::new(p));
        }
        if let Some(p) = std::env::var_os(ENV_VAR).filter(|p| !p.is_empty()) {
            return Some(Cache::new(p));
        }
        dirs::cache_dir().map(|d| Cache::new(d.join("prisma")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &Value) -> PathBuf {
        let digest = Sha256::digest(key.to_string().as_bytes());
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{name}.out"))
    }

    /// Entry format: the exit code on the first line, then stdout verbatim.
    pub fn get(&self, key: &Value) -> Option<Outcome> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        let (code, stdout) = text.split_once('\n')?;
        Some(Outcome {
            code: code.parse().ok()?,
            stdout: stdout.to_owned(),
        })
    }

    pub fn put(&self, key: &Value, out: &Outcome) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(e.to_string());
        std::fs::create_dir_all(&self.dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        write!(tmp, "{}\n{}", out.code, out.stdout).map_err(io)?;
        tmp.persist(self.path(key)).map_err(|e| io(e.error))?;
        Ok(())
    }
}
