//! On-disk cache of exploration results, keyed by the normalized algebra,
//! the field prime and the limits.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use silt_core::explorer::Limits;

use crate::formats::{AlgebraFile, PosetJson};

#[derive(Serialize)]
struct KeyDoc<'a> {
    algebra: &'a AlgebraFile,
    p: u32,
    max_nodes: Option<usize>,
    max_depth: Option<usize>,
}

pub fn cache_key(algebra: &AlgebraFile, limits: Limits) -> String {
    let doc = KeyDoc {
        algebra,
        p: algebra.field.p,
        max_nodes: limits.max_nodes,
        max_depth: limits.max_depth,
    };
    let bytes = serde_json::to_vec(&doc).expect("serializable");
    hex::encode(Sha256::digest(bytes))
}

/// What a run stores: the poset and, for complete runs, the Hasse check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedRun {
    pub hasse_check: Option<bool>,
    pub poset: PosetJson,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Unreadable or stale entries count as misses.
    pub fn load(&self, key: &str) -> Option<CachedRun> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, run: &CachedRun) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!("{key}.json.tmp"));
        fs::write(&tmp, serde_json::to_string_pretty(run).expect("serializable"))?;
        fs::rename(tmp, self.path(key))
    }
}
