//! Step budgets for exhaustive searches.

use thiserror::Error;

/// Default number of elementary steps an exhaustive search may take.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {limit} steps exceeded")]
pub struct BudgetExceeded {
    pub limit: u64,
}

/// Counts elementary steps and fails once the limit is passed.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.used += 1;
        if self.used > self.limit {
            Err(BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhausts_after_limit() {
        let mut b = Budget::new(2);
        assert!(b.tick().is_ok());
        assert!(b.tick().is_ok());
        assert_eq!(b.tick(), Err(BudgetExceeded { limit: 2 }));
    }
}
