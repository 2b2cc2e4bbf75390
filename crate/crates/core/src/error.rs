use thiserror::Error;

use crate::weyl::Perm;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("rank mismatch: expected S_{expected}, got S_{got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("could not split off D_{w}<{shift}>: {reason}")]
    NoSplitting {
        w: Perm,
        shift: i32,
        reason: String,
    },
    #[error("postcondition violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("side mismatch: {0}")]
    SideMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
