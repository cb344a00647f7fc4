//! Optional on-disk memoization of representation constructions, keyed by
//! algebra and kind, rooted at the HOLONOME_CACHE directory when set.

use crate::error::Result;
use crate::liecore::{build_rep, Algebra, RepKind, Representation};
use std::path::PathBuf;

pub const CACHE_ENV: &str = "HOLONOME_CACHE";

/// Builds (or loads from the cache directory when `HOLONOME_CACHE` is set)
/// the representation for the given algebra and kind descriptors.
pub fn cached_rep(algebra: &str, rep: &str) -> Result<Representation> {
    let alg = Algebra::parse(algebra)?;
    let kind = RepKind::parse(rep)?;
    let Some(dir) = std::env::var_os(CACHE_ENV) else {
        return build_rep(alg, kind, None);
    };
    let mut path = PathBuf::from(dir);
    std::fs::create_dir_all(&path)?;
    path.push(format!("rep_{alg}_{kind}.json"));

    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(cached) = serde_json::from_slice::<Representation>(&bytes) {
            if cached.algebra == alg && cached.kind == kind {
                return Ok(cached);
            }
        }
        // Stale or corrupt cache entries are rebuilt below.
    }
    let rep = build_rep(alg, kind, None)?;
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_vec(&rep)?)?;
    std::fs::rename(&tmp, &path)?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        // Run the cache path directly against an explicit directory by
        // serializing and reloading; the env-driven path is exercised by
        // the CLI tests.
        let rep = build_rep(Algebra::Sl(3), RepKind::Adjoint, None).unwrap();
        let file = dir.path().join("rep.json");
        std::fs::write(&file, serde_json::to_vec(&rep).unwrap()).unwrap();
        let loaded: Representation =
            serde_json::from_slice(&std::fs::read(&file).unwrap()).unwrap();
        assert_eq!(loaded.dim, rep.dim);
        assert_eq!(loaded.root_vectors.len(), rep.root_vectors.len());
        assert_eq!(loaded.weights, rep.weights);
    }
}
