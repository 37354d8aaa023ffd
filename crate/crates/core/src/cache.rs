//! Content-addressed on-disk cache for the expensive symbolic tables.
//!
//! Each entry is a JSON file named after the SHA-256 of its *recipe* (a
//! string describing what was computed and from which inputs). The file
//! stores the payload together with the SHA-256 of the payload's serialized
//! form; an entry whose digest does not match is treated as stale and
//! rebuilt. Writes go to a temporary file that is renamed into place, so an
//! interrupted run never leaves a half-written entry behind.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::char2inv::{build_k_table_from, InvariantRecord, KName, KTable};
use crate::igusa0::{build_igusa_invariants, IgusaTable, JName, ScaledInvariant};
use crate::polycore::{format, MultiPoly, RationalConstant};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "G2C2_CACHE";
/// Default cache directory, relative to the working directory.
pub const DEFAULT_DIR: &str = ".g2c2-cache";

/// Bumped whenever the serialized layout or the construction changes.
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed table: {0}")]
    Format(String),
    #[error("table construction failed: {0}")]
    Build(String),
}

/// How an entry was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    /// No entry existed.
    Built,
    /// An entry existed but failed its digest check or did not parse.
    Rebuilt,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$G2C2_CACHE` if set and nonempty, else `./.g2c2-cache`.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::new(d),
            _ => Cache::new(DEFAULT_DIR),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Location of the entry for `recipe`.
    pub fn entry_path(&self, kind: &str, recipe: &str) -> PathBuf {
        self.dir.join(format!("{kind}-{}.json", &sha256_hex(recipe.as_bytes())[..24]))
    }

    /// The payload stored for `recipe`, or `Err(true)` if an entry exists
    /// but is corrupt and `Err(false)` if there is none.
    fn read(&self, kind: &str, recipe: &str) -> Result<Value, bool> {
        let text = match fs::read_to_string(self.entry_path(kind, recipe)) {
            Ok(t) => t,
            Err(_) => return Err(false),
        };
        let entry: Value = serde_json::from_str(&text).map_err(|_| true)?;
        let payload = entry.get("payload").ok_or(true)?;
        let digest = entry.get("sha256").and_then(Value::as_str).ok_or(true)?;
        let recorded = entry.get("recipe").and_then(Value::as_str).ok_or(true)?;
        let actual = sha256_hex(serde_json::to_string(payload).map_err(|_| true)?.as_bytes());
        if recorded != recipe || digest != actual {
            return Err(true);
        }
        Ok(payload.clone())
    }

    /// Writes an entry atomically; returns the payload digest.
    fn write(&self, kind: &str, recipe: &str, payload: &Value) -> Result<String, CacheError> {
        fs::create_dir_all(&self.dir)?;
        let body = serde_json::to_string(payload)?;
        let digest = sha256_hex(body.as_bytes());
        let entry = json!({ "recipe": recipe, "sha256": digest, "payload": payload });
        let path = self.entry_path(kind, recipe);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&entry)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(digest)
    }

    /// Loads the entry or builds, stores and returns it. An entry that
    /// passes the digest check but fails `decode` is also rebuilt.
    fn get_or_build<T>(
        &self,
        kind: &str,
        recipe: &str,
        decode: impl Fn(&Value) -> Result<T, CacheError>,
        build: impl FnOnce() -> Result<T, CacheError>,
        encode: impl Fn(&T) -> Value,
    ) -> Result<(T, String, CacheStatus), CacheError> {
        let status = match self.read(kind, recipe) {
            Ok(payload) => match decode(&payload) {
                Ok(t) => {
                    let digest = sha256_hex(serde_json::to_string(&payload)?.as_bytes());
                    return Ok((t, digest, CacheStatus::Hit));
                }
                Err(_) => CacheStatus::Rebuilt,
            },
            Err(true) => CacheStatus::Rebuilt,
            Err(false) => CacheStatus::Built,
        };
        let t = build()?;
        let digest = self.write(kind, recipe, &encode(&t))?;
        Ok((t, digest, status))
    }

    /// The calibrated Igusa table together with the digest of its payload.
    pub fn igusa_table(&self) -> Result<(IgusaTable, String, CacheStatus), CacheError> {
        let recipe = format!("g2c2 igusa-table v{FORMAT_VERSION} core {}", env!("CARGO_PKG_VERSION"));
        self.get_or_build(
            "igusa",
            &recipe,
            igusa_from_json,
            || build_igusa_invariants().map_err(|e| CacheError::Build(e.to_string())),
            igusa_to_json,
        )
    }

    /// The K-table derived from an Igusa table whose payload digest is
    /// `igusa_digest`; the digest is part of the recipe.
    pub fn k_table(&self, igusa: &IgusaTable, igusa_digest: &str) -> Result<(KTable, CacheStatus), CacheError> {
        let recipe = format!("g2c2 k-table v{FORMAT_VERSION} core {} from igusa {igusa_digest}", env!("CARGO_PKG_VERSION"));
        let (t, _, status) = self.get_or_build(
            "ktable",
            &recipe,
            k_table_from_json,
            || build_k_table_from(igusa).map_err(|e| CacheError::Build(e.to_string())),
            k_table_to_json,
        )?;
        Ok((t, status))
    }

    /// Both tables, building whatever is missing or stale.
    pub fn tables(&self) -> Result<(IgusaTable, KTable), CacheError> {
        let (igusa, digest, _) = self.igusa_table()?;
        let (k, _) = self.k_table(&igusa, &digest)?;
        Ok((igusa, k))
    }
}

/// `{"invariants": [{"name", "scale": "±p/q·2^e", "body": <poly JSON>}, ...]}`.
pub fn igusa_to_json(table: &IgusaTable) -> Value {
    let items: Vec<Value> = table
        .iter()
        .map(|j| json!({ "name": j.name.to_string(), "scale": j.scale.to_string(), "body": format::to_json_value(&j.body) }))
        .collect();
    json!({ "invariants": items })
}

pub fn igusa_from_json(value: &Value) -> Result<IgusaTable, CacheError> {
    let bad = |m: &str| CacheError::Format(m.to_string());
    let items = value.get("invariants").and_then(Value::as_array).ok_or_else(|| bad("missing invariants"))?;
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        let name = item.get("name").and_then(Value::as_str).and_then(JName::parse).ok_or_else(|| bad("bad name"))?;
        let scale: RationalConstant = item
            .get("scale")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing scale"))?
            .parse()
            .map_err(|e: crate::polycore::PolyError| CacheError::Format(e.to_string()))?;
        let body = match format::from_json_value(item.get("body").ok_or_else(|| bad("missing body"))?) {
            Ok(MultiPoly::Integers(p)) => p,
            _ => return Err(bad("body must be an integer polynomial")),
        };
        out.push(ScaledInvariant { name, body, scale });
    }
    IgusaTable::from_invariants(out).ok_or_else(|| bad("incomplete Igusa table"))
}

/// `{"invariants": [{"name", "weight", "body": <poly JSON>}, ...]}`.
pub fn k_table_to_json(table: &KTable) -> Value {
    let items: Vec<Value> = table
        .iter()
        .map(|r| json!({ "name": r.name.to_string(), "weight": r.weight, "body": format::to_json_value(&r.body) }))
        .collect();
    json!({ "invariants": items })
}

pub fn k_table_from_json(value: &Value) -> Result<KTable, CacheError> {
    let bad = |m: &str| CacheError::Format(m.to_string());
    let items = value.get("invariants").and_then(Value::as_array).ok_or_else(|| bad("missing invariants"))?;
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        let name = item.get("name").and_then(Value::as_str).and_then(KName::parse).ok_or_else(|| bad("bad name"))?;
        let body = match format::from_json_value(item.get("body").ok_or_else(|| bad("missing body"))?) {
            Ok(MultiPoly::F2(p)) => p,
            _ => return Err(bad("body must be an F2 polynomial")),
        };
        out.push(InvariantRecord::new(name, body));
    }
    KTable::from_records(out).ok_or_else(|| bad("incomplete K-table"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char2inv::k_table;
    use crate::igusa0::igusa_table;

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("g2c2-cache-unit-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn tables_round_trip_through_json() {
        assert_eq!(&igusa_from_json(&igusa_to_json(igusa_table())).unwrap(), igusa_table());
        assert_eq!(&k_table_from_json(&k_table_to_json(k_table())).unwrap(), k_table());
    }

    #[test]
    fn hit_after_build_and_rebuild_after_corruption() {
        let cache = Cache::new(scratch("corrupt"));
        let recipe = "unit test entry";
        let build = || Ok::<_, CacheError>(7u64);
        let decode = |v: &Value| v.as_u64().ok_or_else(|| CacheError::Format("not a number".into()));
        let encode = |t: &u64| json!(t);
        let (_, _, s) = cache.get_or_build("t", recipe, decode, build, encode).unwrap();
        assert_eq!(s, CacheStatus::Built);
        let (v, _, s) = cache.get_or_build("t", recipe, decode, build, encode).unwrap();
        assert_eq!((v, s), (7, CacheStatus::Hit));

        // tamper with the payload but keep the old digest
        let path = cache.entry_path("t", recipe);
        let text = fs::read_to_string(&path).unwrap().replace("\"payload\":7", "\"payload\":8");
        fs::write(&path, text).unwrap();
        let (v, _, s) = cache.get_or_build("t", recipe, decode, build, encode).unwrap();
        assert_eq!((v, s), (7, CacheStatus::Rebuilt));

        fs::write(&path, "{not json").unwrap();
        let (_, _, s) = cache.get_or_build("t", recipe, decode, build, encode).unwrap();
        assert_eq!(s, CacheStatus::Rebuilt);
        fs::remove_dir_all(cache.dir()).unwrap();
    }
}
