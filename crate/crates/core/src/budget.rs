use std::cell::Cell;

use crate::error::{Error, Result};

/// Default cap on scalar multiplications per operation.
pub const DEFAULT_MAX_EVALS: u64 = 10_000_000;

/// Counts scalar work for one operation and aborts once the cap is passed.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: Cell::new(0) }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn charge(&self, n: u64) -> Result<()> {
        let u = self.used.get().saturating_add(n);
        self.used.set(u);
        if u > self.limit {
            Err(Error::ResourceCap(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_EVALS)
    }
}
