//! On-disk cache of `V_m` bases (`vn-cache.json`), invalidated by engine version.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::theta::{ThetaBasis, ThetaError, VmBasis};
use super::vn::vn_dimension;

/// Changes whenever the stored bases could differ (construction or order).
pub const ENGINE_VERSION: &str = concat!("gjs-cup-", env!("CARGO_PKG_VERSION"), "-jw-path-1");

pub const CACHE_FILE: &str = "vn-cache.json";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    engine_version: String,
    bases: Vec<VmBasis>,
}

pub fn cache_path(dir: &Path) -> PathBuf {
    dir.join(CACHE_FILE)
}

fn read(dir: &Path) -> Vec<VmBasis> {
    let Ok(text) = fs::read_to_string(cache_path(dir)) else {
        return Vec::new();
    };
    match serde_json::from_str::<CacheFile>(&text) {
        Ok(file) if file.engine_version == ENGINE_VERSION => file.bases,
        _ => Vec::new(),
    }
}

/// Load `V_m` for `m ≤ level` from `dir`, computing and storing whatever is
/// missing or stale.
pub fn load_vbases(dir: &Path, level: usize) -> Result<Vec<Arc<VmBasis>>, ThetaError> {
    let mut stored = read(dir);
    let mut changed = false;
    let mut out = Vec::with_capacity(level + 1);
    for m in 0..=level {
        let expected = if m >= 2 { vn_dimension(m) as usize } else { 0 };
        let hit = stored.iter().find(|b| b.m == m && b.vectors.len() == expected && b.norms.len() == expected);
        let basis = match hit {
            Some(b) => b.clone(),
            None => {
                let b = VmBasis::compute(m);
                stored.retain(|s| s.m != m);
                stored.push(b.clone());
                changed = true;
                b
            }
        };
        out.push(Arc::new(basis));
    }
    if changed {
        stored.sort_by_key(|b| b.m);
        let file = CacheFile { engine_version: ENGINE_VERSION.to_string(), bases: stored };
        fs::create_dir_all(dir).map_err(|e| ThetaError::Cache(format!("{}: {e}", dir.display())))?;
        let text = serde_json::to_string(&file).expect("cache serializes");
        fs::write(cache_path(dir), text).map_err(|e| ThetaError::Cache(format!("{}: {e}", dir.display())))?;
    }
    Ok(out)
}

/// A labeled basis backed by the on-disk cache.
pub fn cached_theta_basis(dir: &Path, level: usize) -> Result<ThetaBasis, ThetaError> {
    Ok(ThetaBasis::from_vbases(level, load_vbases(dir, level)?))
}
