//! Work limits for exhaustive enumerations and large linear systems.

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// An upper bound on the work a single computation may attempt. What is counted depends on
/// the computation: tuples visited by an enumeration, or cells of a linear system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    limit: u128,
}

impl Budget {
    pub fn new(limit: u128) -> Budget {
        Budget { limit }
    }

    pub fn unlimited() -> Budget {
        Budget { limit: u128::MAX }
    }

    pub fn limit(&self) -> u128 {
        self.limit
    }

    pub fn check(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.limit {
            return Err(Error::Budget {
                what,
                needed,
                budget: self.limit,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(DEFAULT_BUDGET)
    }
}
