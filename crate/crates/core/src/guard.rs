//! Size guardrails for exponential enumerations.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};

/// Posets larger than this are refused for upset enumeration.
pub const UPSET_LIMIT: usize = 20;
/// Families larger than this are refused for literal subfamily enumeration.
pub const FAMILY_LIMIT: usize = 16;
/// Lattices larger than this are refused for join/meet tables.
pub const LATTICE_LIMIT: usize = 1024;

static OVERRIDE: AtomicBool = AtomicBool::new(false);

/// Lift all guardrails for the rest of the process.
pub fn set_override(on: bool) {
    OVERRIDE.store(on, Ordering::Relaxed);
}

pub fn overridden() -> bool {
    OVERRIDE.load(Ordering::Relaxed)
}

pub(crate) fn ensure(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit && !overridden() {
        Err(Error::Guardrail { what, size, limit })
    } else {
        Ok(())
    }
}
