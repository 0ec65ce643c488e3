use std::time::{Duration, Instant};

use snflab_core::smith::{Budget, DEFAULT_MAX_ENTRY_BITS};
use snflab_core::{Error, IncidenceSpec, SnfOptions};

use crate::error::LabResult;

/// Largest accepted row or column count.
pub const DEFAULT_MAX_DIM: usize = 2000;

/// Per-computation resource limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
    pub max_entry_bits: u64,
    pub time_budget: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: DEFAULT_MAX_DIM, max_entry_bits: DEFAULT_MAX_ENTRY_BITS, time_budget: None }
    }
}

impl Limits {
    pub fn snf_options(&self, want_transforms: bool) -> SnfOptions {
        SnfOptions { want_transforms, max_entry_bits: self.max_entry_bits }
    }

    pub fn deadline(&self) -> Deadline {
        Deadline(self.time_budget.map(|d| Instant::now() + d))
    }

    /// Refuses specs whose matrix would exceed `max_dim` on either side.
    pub fn admit(&self, spec: &IncidenceSpec) -> LabResult<()> {
        spec.validate()?;
        let (r, c) = spec.shape();
        let largest = r.max(c);
        if largest > self.max_dim as u128 {
            return Err(Error::TooMany { what: "matrix rows or columns", count: largest, bound: self.max_dim as u128 }.into());
        }
        Ok(())
    }

    pub fn max_entries(&self) -> u128 {
        (self.max_dim as u128) * (self.max_dim as u128)
    }
}

/// Wall-clock budget; `None` never expires.
#[derive(Clone, Copy, Debug)]
pub struct Deadline(Option<Instant>);

impl Budget for Deadline {
    fn exhausted(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}
