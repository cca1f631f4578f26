use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default number of reduction steps a single verification may spend.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// A shared counter of reduction steps with a hard ceiling.
///
/// Every Groebner reduction step and every constant-field multiplication
/// performed while building towers is charged here, so one budget bounds a
/// whole pipeline.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn charge(&self, steps: u64) -> Result<()> {
        let used = self.used.fetch_add(steps, Ordering::Relaxed).saturating_add(steps);
        if used > self.limit {
            return Err(Error::Budget { limit: self.limit, used, partial: String::new() });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_STEP_BUDGET)
    }
}

/// Attach partial statistics to a budget error on its way out.
pub(crate) fn annotate(err: Error, note: impl FnOnce() -> String) -> Error {
    match err {
        Error::Budget { limit, used, partial } if partial.is_empty() => {
            Error::Budget { limit, used, partial: format!("; {}", note()) }
        }
        other => other,
    }
}
