//! Node budgets and statistics shared by every exhaustive search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Upper limit on branch nodes a single search may expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub fn new(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }

    pub fn unlimited() -> Self {
        Budget { max_nodes: u64::MAX }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: DEFAULT_NODE_BUDGET }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Counts nodes against a budget.
#[derive(Debug)]
pub(crate) struct NodeCounter {
    pub nodes: u64,
    limit: u64,
}

/// Raised inside a search when the counter runs out; callers translate it
/// into [`Error::BudgetExceeded`] with whatever bounds they hold.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OutOfBudget;

impl NodeCounter {
    pub fn new(budget: Budget) -> Self {
        NodeCounter { nodes: 0, limit: budget.max_nodes }
    }

    #[inline]
    pub fn tick(&mut self) -> std::result::Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.limit {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    pub fn exceeded(&self, lower: Option<u64>, upper: Option<u64>) -> Error {
        Error::BudgetExceeded { nodes: self.nodes, lower, upper }
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats { nodes: self.nodes }
    }
}

/// Outcome of an existence search. `Unknown` is never collapsed into `NotFound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Existence<T> {
    Found(T),
    NotFound,
    Unknown,
}

impl<T> Existence<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Existence::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Existence::Found(_))
    }

    pub fn into_result(self, nodes: u64) -> Result<Option<T>> {
        match self {
            Existence::Found(t) => Ok(Some(t)),
            Existence::NotFound => Ok(None),
            Existence::Unknown => Err(Error::BudgetExceeded { nodes, lower: None, upper: None }),
        }
    }
}
