//! On-disk character tables, one JSON file per degree.

use hurwitz_core::partitions::CharacterTable;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    table: CharacterTable,
}

pub struct CharacterCache {
    dir: PathBuf,
}

impl CharacterCache {
    /// `--cache-dir`, then `HURWITZ_CACHE_DIR`, then the user cache directory.
    pub fn locate(flag: Option<PathBuf>) -> Option<CharacterCache> {
        let dir = flag
            .or_else(|| std::env::var_os("HURWITZ_CACHE_DIR").map(PathBuf::from))
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("hurwitz")))
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("hurwitz")))?;
        Some(CharacterCache { dir })
    }

    pub fn path(&self, degree: u32) -> PathBuf {
        self.dir.join(format!("characters-v{VERSION}-d{degree}.json"))
    }

    fn read(&self, degree: u32) -> Option<CharacterTable> {
        let path = self.path(degree);
        let text = std::fs::read_to_string(&path).ok()?;
        let file: CacheFile = match serde_json::from_str(&text) {
            Ok(f) => f,
            Err(e) => {
                log::warn!("ignoring unreadable cache file {}: {e}", path.display());
                return None;
            }
        };
        if file.version != VERSION || file.table.degree != degree {
            log::warn!("ignoring stale cache file {}", path.display());
            return None;
        }
        if let Err(e) = file.table.validate() {
            log::warn!("ignoring corrupt cache file {}: {e}", path.display());
            return None;
        }
        Some(file.table)
    }

    fn write(&self, table: &CharacterTable) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        let file = CacheFile {
            version: VERSION,
            table: table.clone(),
        };
        serde_json::to_writer(&mut tmp, &file)?;
        tmp.flush()?;
        tmp.persist(self.path(table.degree)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Cached table for `degree`, rebuilding and rewriting it when missing
    /// or invalid.
    pub fn load_or_build(&self, degree: u32) -> CharacterTable {
        if let Some(t) = self.read(degree) {
            log::debug!("cache hit for degree {degree}");
            return t;
        }
        log::debug!("cache miss for degree {degree}");
        let table = CharacterTable::build(degree);
        if let Err(e) = self.write(&table) {
            log::warn!("could not write cache in {}: {e}", self.dir.display());
        }
        table
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

/// Seed the character memo for all degrees up to `degree`.
pub fn warm(cache: Option<&CharacterCache>, degree: u32) {
    if let Some(cache) = cache {
        for d in 1..=degree {
            cache.load_or_build(d).install();
        }
    }
}
