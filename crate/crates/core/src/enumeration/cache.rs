//! On-disk basis cache: `basis_<type>_k<k>_m<m>.jsonl`, a header line with the
//! format version and a SHA-256 of the body, then one canonical record per line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ComplexBasis;
use crate::diagrams::{ComplexType, Diagram};
use crate::error::{GraphError, Result};

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub format_version: u32,
    pub checksum: String,
    pub count: usize,
}

pub fn cache_file_name(kind: ComplexType, k: i64, m: i64) -> String {
    format!("basis_{kind}_k{k}_m{m}.jsonl")
}

pub fn cache_path(dir: &Path, kind: ComplexType, k: i64, m: i64) -> PathBuf {
    dir.join(cache_file_name(kind, k, m))
}

pub fn body_checksum(body: &str) -> String {
    let digest = Sha256::digest(body.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> GraphError + '_ {
    move |source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes the basis atomically (temporary file, then rename) and returns the path.
pub fn basis_cache_store(dir: &Path, basis: &ComplexBasis) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let (k, m) = basis.grading();
    let path = cache_path(dir, basis.kind(), k, m);
    let body = basis.to_jsonl_body();
    let header = CacheHeader {
        format_version: CACHE_FORMAT_VERSION,
        checksum: body_checksum(&body),
        count: basis.len(),
    };
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        cache_file_name(basis.kind(), k, m),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
        let mut text = serde_json::to_string(&header)?;
        text.push('\n');
        text.push_str(&body);
        f.write_all(text.as_bytes()).map_err(io_err(&tmp))?;
        f.sync_all().map_err(io_err(&tmp))?;
    }
    fs::rename(&tmp, &path).map_err(io_err(&path))?;
    Ok(path)
}

/// Reads the header of a cache file, checking version and checksum.
pub fn read_verified(path: &Path) -> Result<(CacheHeader, String)> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let (first, body) = text.split_once('\n').ok_or_else(|| GraphError::CacheCorrupt {
        path: path.to_path_buf(),
        reason: "missing header line".into(),
    })?;
    let header: CacheHeader = serde_json::from_str(first).map_err(|e| GraphError::CacheCorrupt {
        path: path.to_path_buf(),
        reason: format!("bad header: {e}"),
    })?;
    if header.format_version != CACHE_FORMAT_VERSION {
        return Err(GraphError::StaleCache {
            path: path.to_path_buf(),
            found: header.format_version,
            expected: CACHE_FORMAT_VERSION,
        });
    }
    if body_checksum(body) != header.checksum {
        return Err(GraphError::CacheChecksum(path.to_path_buf()));
    }
    Ok((header, body.to_string()))
}

/// Loads a cached basis; `Ok(None)` when no cache file exists.
pub fn basis_cache_load(dir: &Path, kind: ComplexType, k: i64, m: i64) -> Result<Option<ComplexBasis>> {
    let path = cache_path(dir, kind, k, m);
    if !path.exists() {
        return Ok(None);
    }
    let (header, body) = read_verified(&path)?;
    let corrupt = |reason: String| GraphError::CacheCorrupt {
        path: path.clone(),
        reason,
    };
    let diagrams: Vec<Diagram> = body
        .lines()
        .map(Diagram::from_json)
        .collect::<Result<_>>()
        .map_err(|e| corrupt(e.to_string()))?;
    if diagrams.len() != header.count {
        return Err(corrupt(format!("{} records, header says {}", diagrams.len(), header.count)));
    }
    if let Some(d) = diagrams.iter().find(|d| d.kind() != kind || d.grading() != (k, m)) {
        return Err(corrupt(format!("record {d} does not belong to ({kind}, {k}, {m})")));
    }
    let basis = ComplexBasis::new(kind, k, m, diagrams).map_err(|e| corrupt(e.to_string()))?;
    if basis.to_jsonl_body() != body {
        return Err(corrupt("records are not in canonical order".into()));
    }
    Ok(Some(basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_basis, DEFAULT_MAX_CELL_SIZE};

    #[test]
    fn store_then_load_is_identity() {
        let dir = tempfile::tempdir().unwrap();
        let basis = enumerate_basis(ComplexType::Even, 3, 1, DEFAULT_MAX_CELL_SIZE).unwrap();
        let path = basis_cache_store(dir.path(), &basis).unwrap();
        assert!(path.ends_with("basis_even_k3_m1.jsonl"));
        let loaded = basis_cache_load(dir.path(), ComplexType::Even, 3, 1).unwrap().unwrap();
        assert_eq!(loaded, basis);
        assert!(basis_cache_load(dir.path(), ComplexType::Odd, 3, 1).unwrap().is_none());
    }

    #[test]
    fn corrupted_record_is_a_checksum_error() {
        let dir = tempfile::tempdir().unwrap();
        let basis = enumerate_basis(ComplexType::Odd, 2, 0, DEFAULT_MAX_CELL_SIZE).unwrap();
        let path = basis_cache_store(dir.path(), &basis).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("[1,", "[2,", 1)).unwrap();
        let err = basis_cache_load(dir.path(), ComplexType::Odd, 2, 0).unwrap_err();
        assert!(matches!(err, GraphError::CacheChecksum(_)), "{err}");
    }

    #[test]
    fn version_mismatch_is_stale() {
        let dir = tempfile::tempdir().unwrap();
        let basis = enumerate_basis(ComplexType::Odd, 1, 0, DEFAULT_MAX_CELL_SIZE).unwrap();
        let path = basis_cache_store(dir.path(), &basis).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("\"format_version\":1", "\"format_version\":0", 1)).unwrap();
        let err = basis_cache_load(dir.path(), ComplexType::Odd, 1, 0).unwrap_err();
        assert!(matches!(err, GraphError::StaleCache { found: 0, .. }), "{err}");
    }
}
