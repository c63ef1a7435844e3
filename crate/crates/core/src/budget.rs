//! Search budgets shared by the exact solvers.

use std::time::{Duration, Instant};

/// Limits on a search: node count and/or wall-clock time. A solver that runs
/// out of budget reports a flagged, inexact result instead of failing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }

    pub fn millis(ms: u64) -> Budget {
        Budget {
            max_nodes: None,
            time_limit: Some(Duration::from_millis(ms)),
        }
    }

    pub fn with_nodes(mut self, max_nodes: u64) -> Budget {
        self.max_nodes = Some(max_nodes);
        self
    }

    pub fn with_time(mut self, limit: Duration) -> Budget {
        self.time_limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
    nodes: u64,
    exhausted: bool,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Meter {
        Meter {
            budget,
            start: Instant::now(),
            nodes: 0,
            exhausted: false,
        }
    }

    /// Counts one search node; returns false once the budget is spent.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
            self.exhausted = true;
        } else if self.nodes & 63 == 1 {
            if let Some(limit) = self.budget.time_limit {
                if self.start.elapsed() >= limit {
                    self.exhausted = true;
                }
            }
        }
        !self.exhausted
    }

    #[inline]
    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            elapsed: self.start.elapsed(),
        }
    }
}
