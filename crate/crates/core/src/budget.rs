//! Search budgets shared by the exact solvers.
//!
//! A budget caps the number of search nodes and, optionally, wall time.
//! Node caps are deterministic; time caps are not, so the harness uses
//! node caps and the CLI exposes `--budget-ms` for interactive use.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub const fn unlimited() -> Self {
        Budget {
            max_nodes: None,
            time_limit: None,
        }
    }

    pub const fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }

    pub fn millis(ms: u64) -> Self {
        Budget {
            max_nodes: None,
            time_limit: Some(Duration::from_millis(ms)),
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    /// Start metering against this budget.
    pub fn meter(&self) -> Meter {
        Meter {
            spent: AtomicU64::new(0),
            limit: self.max_nodes.unwrap_or(u64::MAX),
            deadline: self.time_limit.map(|d| Instant::now() + d),
            exhausted: AtomicBool::new(false),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(50_000_000)
    }
}

/// Running counter for one solver invocation. Safe to share across workers.
#[derive(Debug)]
pub struct Meter {
    spent: AtomicU64,
    limit: u64,
    deadline: Option<Instant>,
    exhausted: AtomicBool,
}

impl Meter {
    /// Charge one node. Returns `false` once the budget is gone.
    #[inline]
    pub fn tick(&self) -> bool {
        self.tick_n(1)
    }

    pub fn tick_n(&self, n: u64) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let before = self.spent.fetch_add(n, Ordering::Relaxed);
        let now = before.saturating_add(n);
        if now > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        // Checking the clock is comparatively slow; sample it.
        if let Some(deadline) = self.deadline {
            if before >> 10 != now >> 10 && Instant::now() >= deadline {
                self.exhausted.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub fn spent(&self) -> u64 {
        self.spent.load(Ordering::Relaxed).min(self.limit)
    }
}
