//! Size caps. `NFLAB_SIZE_CAP` overrides the default carrier cap.

use crate::error::{Error, Result};
use std::sync::OnceLock;

pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Carriers above this size are refused by the exhaustive oracles.
pub const ORACLE_CAP: usize = 24;

/// Largest carrier accepted by the poset-level (lower-bound set) n-filter check.
pub const POSET_PATH_CAP: usize = 16;

/// Largest carrier produced by the named gallery constructions.
pub const GALLERY_CAP: usize = 256;

pub fn size_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("NFLAB_SIZE_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_SIZE_CAP)
    })
}

pub fn check_size(size: usize) -> Result<()> {
    check_cap(size, size_cap())
}

pub fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::SizeCap { size, cap })
    } else {
        Ok(())
    }
}
