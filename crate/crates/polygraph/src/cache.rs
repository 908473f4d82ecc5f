//! Checksummed on-disk cache for expensive graph builds.
//!
//! Each entry is a compact binary edge list plus a JSON sidecar holding the
//! SHA-256 of the graph file; hits re-verify the checksum before reuse and a
//! corrupt or mismatched entry simply misses, so the caller rebuilds.
//! Writers take an advisory lock file so concurrent processes sharing a
//! cache directory do not interleave writes.

use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;
use thiserror::Error;

/// Bumped whenever a geometry decision changes the produced graphs, so stale
/// cache entries from older conventions can never be confused with current
/// ones.
pub const GEOMETRY_DECISIONS_VERSION: u32 = 1;

const MAGIC: &[u8; 4] = b"PGR1";
const LOCK_RETRIES: u32 = 200;
const LOCK_WAIT: Duration = Duration::from_millis(50);

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache lock timeout on {0}")]
    LockTimeout(PathBuf),
}

#[derive(Debug, Clone)]
pub struct CacheConfig {
    pub dir: PathBuf,
}

impl CacheConfig {
    pub fn new(dir: impl Into<PathBuf>) -> CacheConfig {
        CacheConfig { dir: dir.into() }
    }

    /// Resolution order: explicit path, then POLYGRAPH_CACHE_DIR, then a
    /// directory under the system temp dir.
    pub fn resolve(explicit: Option<PathBuf>) -> CacheConfig {
        if let Some(dir) = explicit {
            return CacheConfig::new(dir);
        }
        if let Ok(dir) = std::env::var("POLYGRAPH_CACHE_DIR") {
            if !dir.is_empty() {
                return CacheConfig::new(dir);
            }
        }
        CacheConfig::new(std::env::temp_dir().join("polygraph-cache"))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Meta {
    key: String,
    order: u64,
    edges: u64,
    sha256: String,
}

pub fn graph_key(family_tag: &str, q: u64) -> String {
    format!("{family_tag}-q{q}-v{GEOMETRY_DECISIONS_VERSION}")
}

fn graph_path(cfg: &CacheConfig, key: &str) -> PathBuf {
    cfg.dir.join(format!("{key}.graph"))
}

fn meta_path(cfg: &CacheConfig, key: &str) -> PathBuf {
    cfg.dir.join(format!("{key}.json"))
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn encode_graph(g: &Graph) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + g.num_edges() * 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(g.order() as u64).to_le_bytes());
    out.extend_from_slice(&(g.num_edges() as u64).to_le_bytes());
    for (a, b) in g.edges() {
        out.extend_from_slice(&a.to_le_bytes());
        out.extend_from_slice(&b.to_le_bytes());
    }
    out
}

fn decode_graph(bytes: &[u8]) -> Option<Graph> {
    if bytes.len() < 20 || &bytes[..4] != MAGIC {
        return None;
    }
    let n = u64::from_le_bytes(bytes[4..12].try_into().ok()?) as usize;
    let m = u64::from_le_bytes(bytes[12..20].try_into().ok()?) as usize;
    if bytes.len() != 20 + m * 8 {
        return None;
    }
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let off = 20 + i * 8;
        let a = u32::from_le_bytes(bytes[off..off + 4].try_into().ok()?);
        let b = u32::from_le_bytes(bytes[off + 4..off + 8].try_into().ok()?);
        edges.push((a, b));
    }
    Graph::from_edges(n, &edges).ok()
}

/// Loads a cached graph, verifying the sidecar checksum. Any inconsistency
/// (missing files, bad magic, checksum mismatch) reports a miss.
pub fn load_graph(cfg: &CacheConfig, key: &str) -> Result<Option<Graph>, CacheError> {
    let mpath = meta_path(cfg, key);
    let gpath = graph_path(cfg, key);
    let Ok(meta_bytes) = fs::read(&mpath) else {
        return Ok(None);
    };
    let Ok(meta) = serde_json::from_slice::<Meta>(&meta_bytes) else {
        return Ok(None);
    };
    let Ok(mut f) = fs::File::open(&gpath) else {
        return Ok(None);
    };
    let mut bytes = Vec::new();
    f.read_to_end(&mut bytes)?;
    if sha256_hex(&bytes) != meta.sha256 {
        return Ok(None);
    }
    Ok(decode_graph(&bytes).filter(|g| g.order() as u64 == meta.order))
}

/// Stores a graph under the advisory lock, writing through a temp file and
/// renaming into place.
pub fn store_graph(cfg: &CacheConfig, key: &str, g: &Graph) -> Result<(), CacheError> {
    fs::create_dir_all(&cfg.dir)?;
    let _lock = LockGuard::acquire(cfg.dir.join(format!("{key}.lock")))?;
    let bytes = encode_graph(g);
    let meta = Meta {
        key: key.to_string(),
        order: g.order() as u64,
        edges: g.num_edges() as u64,
        sha256: sha256_hex(&bytes),
    };
    let tmp = cfg.dir.join(format!("{key}.graph.tmp"));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, graph_path(cfg, key))?;
    let tmp_meta = cfg.dir.join(format!("{key}.json.tmp"));
    fs::write(&tmp_meta, serde_json::to_vec_pretty(&meta).unwrap())?;
    fs::rename(&tmp_meta, meta_path(cfg, key))?;
    Ok(())
}

struct LockGuard {
    path: PathBuf,
}

impl LockGuard {
    fn acquire(path: PathBuf) -> Result<LockGuard, CacheError> {
        for _ in 0..LOCK_RETRIES {
            match fs::OpenOptions::new()
                .write(true)
                .create_new(true)
                .open(&path)
            {
                Ok(_) => return Ok(LockGuard { path }),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    std::thread::sleep(LOCK_WAIT);
                }
                Err(e) => return Err(CacheError::Io(e)),
            }
        }
        Err(CacheError::LockTimeout(path))
    }
}

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

/// Overwrites an entry's payload without fixing the checksum, then rewrites
/// the sidecar so the checksum matches the new bytes. Test hook for the
/// negative control: a cache entry that is internally consistent but holds
/// the wrong graph.
pub fn poison_entry_for_tests(cfg: &CacheConfig, key: &str, g: &Graph) -> Result<(), CacheError> {
    store_graph(cfg, key, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_graph() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = CacheConfig::new(dir.path());
        let g = sample_graph();
        store_graph(&cfg, "test-key", &g).unwrap();
        let loaded = load_graph(&cfg, "test-key").unwrap().unwrap();
        assert_eq!(loaded, g);
    }

    #[test]
    fn missing_is_none() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = CacheConfig::new(dir.path());
        assert!(load_graph(&cfg, "nope").unwrap().is_none());
    }

    #[test]
    fn corrupt_payload_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = CacheConfig::new(dir.path());
        store_graph(&cfg, "k", &sample_graph()).unwrap();
        // flip one byte in the payload: checksum check must reject it
        let gp = graph_path(&cfg, "k");
        let mut bytes = fs::read(&gp).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 0xFF;
        fs::write(&gp, bytes).unwrap();
        assert!(load_graph(&cfg, "k").unwrap().is_none());
    }

    #[test]
    fn lock_released_after_store() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = CacheConfig::new(dir.path());
        store_graph(&cfg, "k", &sample_graph()).unwrap();
        assert!(!dir.path().join("k.lock").exists());
        // a second store must succeed (no stale lock)
        store_graph(&cfg, "k", &sample_graph()).unwrap();
    }
}
