//! Process-wide ceilings for degree-bounded computations.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 8;
pub const DEFAULT_MAX_GROUP_ORDER: usize = 24;

static MAX_DEGREE: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DEGREE);

/// Current degree ceiling shared by `magnus`, `hall` and `milnor`.
pub fn max_degree() -> usize {
    MAX_DEGREE.load(Ordering::Relaxed)
}

/// Override the degree ceiling (the CLI wires `MILNORKIT_MAX_DEGREE` here).
pub fn set_max_degree(n: usize) {
    MAX_DEGREE.store(n.max(1), Ordering::Relaxed);
}

pub(crate) fn check_degree(n: usize) -> Result<()> {
    let max = max_degree();
    if n > max {
        return Err(Error::DegreeOverflow { requested: n, max });
    }
    Ok(())
}
