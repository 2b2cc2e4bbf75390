//! Size caps shared by every computation.

use crate::error::{Error, Result};

/// Largest `n` for which `S_n` and its coinvariant algebra are built.
pub const DEFAULT_MAX_RANK: usize = 5;

/// Default cap on intermediate matrix dimensions, overridden by the
/// `SOERGEL_MAX_DIM` environment variable.
pub const DEFAULT_MAX_DIM: usize = 5000;

pub fn max_dim() -> usize {
    std::env::var("SOERGEL_MAX_DIM")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

pub fn check_rank(n: usize) -> Result<()> {
    if n == 0 || n > DEFAULT_MAX_RANK {
        return Err(Error::SizeCap {
            what: "rank",
            size: n,
            cap: DEFAULT_MAX_RANK,
        });
    }
    Ok(())
}

pub fn check_dim(what: &'static str, size: usize) -> Result<()> {
    let cap = max_dim();
    if size > cap {
        return Err(Error::SizeCap { what, size, cap });
    }
    Ok(())
}
