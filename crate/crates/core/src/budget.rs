//! Resource limits for the exact searches.

use std::cell::Cell;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Wall-clock and node limits shared by a single search. Counters use
/// interior mutability so nested searches can share one budget.
#[derive(Clone, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    node_limit: Option<u64>,
    nodes: Cell<u64>,
    exhausted: Cell<bool>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None, node_limit: None, nodes: Cell::new(0), exhausted: Cell::new(false) }
    }

    pub fn with_time(limit: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + limit), ..Budget::unlimited() }
    }

    pub fn with_millis(ms: u64) -> Self {
        Budget::with_time(Duration::from_millis(ms))
    }

    pub fn with_nodes(limit: u64) -> Self {
        Budget { node_limit: Some(limit), ..Budget::unlimited() }
    }

    /// Reads `LINFOREST_BUDGET_MS`, unlimited when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var("LINFOREST_BUDGET_MS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget::with_millis)
            .unwrap_or_default()
    }

    /// Same deadline and node limit, node counter reset.
    pub fn fork(&self) -> Self {
        Budget { nodes: Cell::new(0), ..self.clone() }
    }

    /// Counts one search node; false once any limit is hit.
    #[inline]
    pub fn tick(&self) -> bool {
        if self.exhausted.get() {
            return false;
        }
        let nodes = self.nodes.get() + 1;
        self.nodes.set(nodes);
        if self.node_limit.is_some_and(|limit| nodes > limit) {
            self.exhausted.set(true);
            return false;
        }
        if nodes & 0x3ff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.exhausted.set(true);
            return false;
        }
        true
    }

    /// True when a deadline or node limit is set.
    pub fn is_limited(&self) -> bool {
        self.deadline.is_some() || self.node_limit.is_some()
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.get()
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.get()
    }
}

/// Result of an exact search: found, proven absent, or out of budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    Unknown,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_not_found(&self) -> bool {
        matches!(self, SearchOutcome::NotFound)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::NotFound => SearchOutcome::NotFound,
            SearchOutcome::Unknown => SearchOutcome::Unknown,
        }
    }
}
