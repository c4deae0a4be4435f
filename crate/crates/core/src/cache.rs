//! On-disk cache of coset tables.
//!
//! Files are JSON named by a SHA-256 of the schema version, the Cartan
//! matrix, `K` and the length bound. A file that fails to parse, carries
//! another schema or does not match its key is ignored with a warning and
//! the table is recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::weyl::{enumerate_cosets_with_limits, CosetTable, Limits, ReducedWord};

pub const SCHEMA: &str = "coset-table/1";
pub const ENV_VAR: &str = "SCHUBERT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CachedTable {
    schema: String,
    cartan: CartanMatrix,
    #[serde(rename = "K")]
    k: Vec<usize>,
    max_length: Option<usize>,
    complete: bool,
    levels: Vec<Vec<Vec<u8>>>,
}

pub fn cache_key(c: &CartanMatrix, k: &[usize], max_length: Option<usize>) -> String {
    let mut k = k.to_vec();
    k.sort_unstable();
    k.dedup();
    let mut h = Sha256::new();
    h.update(SCHEMA.as_bytes());
    h.update(serde_json::to_vec(c).expect("serializable"));
    h.update(format!("|K={k:?}|max={max_length:?}").as_bytes());
    hex::encode(h.finalize())
}

#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, c: &CartanMatrix, k: &[usize], max_length: Option<usize>) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(c, k, max_length)))
    }

    /// The cached table, or `None` on a miss. Unreadable or mismatched
    /// files are reported through `warn` and treated as misses.
    pub fn load(
        &self,
        c: &CartanMatrix,
        k: &[usize],
        max_length: Option<usize>,
        warn: &mut dyn FnMut(String),
    ) -> Option<CosetTable> {
        let path = self.path_for(c, k, max_length);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                warn(format!("cannot read cache file {}: {e}", path.display()));
                return None;
            }
        };
        match decode(&bytes, c, k, max_length) {
            Ok(t) => Some(t),
            Err(reason) => {
                warn(format!("ignoring cache file {}: {reason}", path.display()));
                None
            }
        }
    }

    pub fn store(&self, table: &CosetTable) -> Result<PathBuf> {
        let io = |path: &Path, e: std::io::Error| Error::Io { path: path.to_path_buf(), message: e.to_string() };
        fs::create_dir_all(&self.dir).map_err(|e| io(&self.dir, e))?;
        let path = self.path_for(table.cartan(), table.k(), table.max_length_bound());
        let record = CachedTable {
            schema: SCHEMA.into(),
            cartan: table.cartan().clone(),
            k: table.k().to_vec(),
            max_length: table.max_length_bound(),
            complete: table.is_complete(),
            levels: (0..=table.top_length()).map(|m| table.level(m).iter().map(|e| e.word().0.clone()).collect()).collect(),
        };
        let tmp = path.with_extension("json.tmp");
        let mut f = fs::File::create(&tmp).map_err(|e| io(&tmp, e))?;
        serde_json::to_writer(&mut f, &record).map_err(|e| Error::Io { path: tmp.clone(), message: e.to_string() })?;
        f.flush().map_err(|e| io(&tmp, e))?;
        drop(f);
        fs::rename(&tmp, &path).map_err(|e| io(&path, e))?;
        Ok(path)
    }

    /// Loads the table or computes and stores it.
    pub fn get_or_compute(
        &self,
        c: &CartanMatrix,
        k: &[usize],
        max_length: Option<usize>,
        limits: Limits,
        warn: &mut dyn FnMut(String),
    ) -> Result<CosetTable> {
        if let Some(t) = self.load(c, k, max_length, warn) {
            return Ok(t);
        }
        let t = enumerate_cosets_with_limits(c, k, max_length, limits)?;
        if let Err(e) = self.store(&t) {
            warn(format!("could not write cache: {e}"));
        }
        Ok(t)
    }
}

fn decode(bytes: &[u8], c: &CartanMatrix, k: &[usize], max_length: Option<usize>) -> std::result::Result<CosetTable, String> {
    let rec: CachedTable = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
    if rec.schema != SCHEMA {
        return Err(format!("schema {:?}", rec.schema));
    }
    let mut want = k.to_vec();
    want.sort_unstable();
    want.dedup();
    if &rec.cartan != c || rec.k != want || rec.max_length != max_length {
        return Err("contents do not match the key".into());
    }
    let levels = rec.levels.into_iter().map(|l| l.into_iter().map(ReducedWord).collect()).collect();
    CosetTable::from_words(c, &want, rec.max_length, rec.complete, levels).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;
    use crate::weyl::enumerate_cosets;

    #[test]
    fn round_trip_and_key_sensitivity() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let c = CartanMatrix::builtin(Series::B, 3).unwrap();
        let t = enumerate_cosets(&c, &[1, 3], None).unwrap();
        cache.store(&t).unwrap();
        let mut warnings = vec![];
        let back = cache.load(&c, &[3, 1], None, &mut |w| warnings.push(w)).unwrap();
        assert_eq!(back, t);
        assert!(cache.load(&c, &[1], None, &mut |w| warnings.push(w)).is_none());
        assert!(cache.load(&c, &[1, 3], Some(4), &mut |w| warnings.push(w)).is_none());
        assert!(warnings.is_empty());
        assert_ne!(cache_key(&c, &[1], None), cache_key(&CartanMatrix::builtin(Series::C, 3).unwrap(), &[1], None));
    }

    #[test]
    fn corrupted_file_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let c = CartanMatrix::builtin(Series::A, 3).unwrap();
        fs::write(cache.path_for(&c, &[2], None), b"{not json").unwrap();
        let mut warnings = vec![];
        let t = cache.get_or_compute(&c, &[2], None, Limits::default(), &mut |w| warnings.push(w)).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(warnings.len(), 1);
        // the rewritten file is now valid
        let mut later = vec![];
        assert!(cache.load(&c, &[2], None, &mut |w| later.push(w)).is_some());
        assert!(later.is_empty());
    }

    #[test]
    fn stale_schema_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let c = CartanMatrix::builtin(Series::A, 2).unwrap();
        let t = enumerate_cosets(&c, &[1], None).unwrap();
        let path = cache.store(&t).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace(SCHEMA, "coset-table/0");
        fs::write(&path, text).unwrap();
        let mut warnings = vec![];
        assert!(cache.load(&c, &[1], None, &mut |w| warnings.push(w)).is_none());
        assert!(warnings[0].contains("schema"));
    }
}
