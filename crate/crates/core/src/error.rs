use std::path::PathBuf;

use thiserror::Error;

use crate::diagrams::ComplexType;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed diagram: {0}")]
    Structural(String),

    #[error("decoration move not applicable: {0}")]
    InvalidMove(String),

    #[error("grading mismatch: {left:?} vs {right:?}")]
    GradingMismatch {
        left: (ComplexType, i64, i64),
        right: (ComplexType, i64, i64),
    },

    #[error("diagram has {0} external vertices, no contractible arc")]
    NoArc(usize),

    #[error("edge {0} is not a regular edge")]
    NotContractible(usize),

    #[error("cell (v_i={vi}, e={e}, v_e={ve}) of {kind} type exceeds the cap of {cap} diagrams")]
    CapExceeded {
        kind: ComplexType,
        vi: usize,
        e: usize,
        ve: usize,
        cap: usize,
    },

    #[error("delta term {0} is missing from the target basis")]
    Incomplete(String),

    #[error("H^{{{k},{m}}} of {kind} type is trivial")]
    NoClass { kind: ComplexType, k: i64, m: i64 },

    #[error("sign convention error: {0}")]
    Convention(String),

    #[error("checksum mismatch in cache file {0}")]
    CacheChecksum(PathBuf),

    #[error("cache file {path} has format version {found}, expected {expected}")]
    StaleCache {
        path: PathBuf,
        found: u32,
        expected: u32,
    },

    #[error("corrupt cache file {path}: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid diagram record: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
