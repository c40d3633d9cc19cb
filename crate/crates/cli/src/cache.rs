//! Content-addressed store of enumerated bases under `HGC_CACHE_DIR`.
//!
//! The file name is the SHA-256 of the window description. Entries hold
//! canonical graphs verbatim, so loading skips canonicalization.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use hgc_core::io::GraphJson;
use hgc_core::{enumerate, BasisSlice, Window};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const FORMAT: &str = "hgc-basis-1";

#[derive(Serialize, Deserialize)]
struct Entry {
    format: String,
    window: String,
    slices: Vec<SliceEntry>,
}

#[derive(Serialize, Deserialize)]
struct SliceEntry {
    degree: i64,
    complete: bool,
    graphs: Vec<GraphJson>,
}

fn key(w: &Window) -> String {
    let mut h = Sha256::new();
    h.update(FORMAT.as_bytes());
    h.update(b"\n");
    h.update(w.describe().as_bytes());
    h.update(format!(" cap={}", w.cap).as_bytes());
    hex::encode(h.finalize())
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("HGC_CACHE_DIR").filter(|s| !s.is_empty()).map(PathBuf::from)
}

fn load(path: &Path, w: &Window) -> Option<BTreeMap<i64, BasisSlice>> {
    let entry: Entry = serde_json::from_slice(&std::fs::read(path).ok()?).ok()?;
    if entry.format != FORMAT || entry.window != w.describe() {
        return None;
    }
    let mut out = BTreeMap::new();
    for s in entry.slices {
        let graphs = s.graphs.iter().map(|g| g.to_graph().map(|t| t.0)).collect::<Result<Vec<_>, _>>().ok()?;
        out.insert(s.degree, BasisSlice::new(s.degree, graphs, s.complete));
    }
    Some(out)
}

fn store(path: &Path, w: &Window, slices: &BTreeMap<i64, BasisSlice>) -> std::io::Result<()> {
    let entry = Entry {
        format: FORMAT.into(),
        window: w.describe(),
        slices: slices
            .values()
            .map(|s| SliceEntry {
                degree: s.degree,
                complete: s.complete,
                graphs: s.graphs.iter().map(|g| GraphJson::from_graph(g, w.params, w.flavor)).collect(),
            })
            .collect(),
    };
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_vec(&entry)?)?;
    std::fs::rename(tmp, path)
}

/// Enumerate through the cache when `HGC_CACHE_DIR` is set. A damaged or
/// stale entry is recomputed and overwritten.
pub fn cached_enumerate(w: &Window) -> anyhow::Result<BTreeMap<i64, BasisSlice>> {
    let Some(dir) = cache_dir() else { return Ok(enumerate(w)?) };
    let path = dir.join(format!("{}.json", key(w)));
    if let Some(hit) = load(&path, w) {
        return Ok(hit);
    }
    let slices = enumerate(w)?;
    std::fs::create_dir_all(&dir)?;
    store(&path, w, &slices)?;
    Ok(slices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hgc_core::{Flavor, Parameters, Sector};

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let w = Window::new(Parameters::new(2, 5).unwrap(), Flavor::A, Sector::All, 2, 3).unwrap();
        let fresh = enumerate(&w).unwrap();
        let path = dir.path().join("entry.json");
        store(&path, &w, &fresh).unwrap();
        let back = load(&path, &w).unwrap();
        assert_eq!(back.len(), fresh.len());
        for (d, s) in &fresh {
            assert_eq!(back[d].graphs, s.graphs);
            assert_eq!(back[d].complete, s.complete);
        }
        let other = w.clone().with_max_edges(3);
        assert!(load(&path, &other).is_none());
        assert_ne!(key(&w), key(&other));
    }
}
