//! Error and resource-budget types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates an operation's contract.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An enumeration or scan would exceed the configured budget.
    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A looked-up window is not contained in the map.
    #[error("window not present in map (layer {layer} lookup missed)")]
    NotInMap {
        /// Which layer table missed (1 or 2).
        layer: u8,
    },

    /// Malformed input text (map files, sidecars, windows).
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal invariant was violated; indicates a construction bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Limits for exhaustive constructions and scans.
///
/// `max_edges` bounds ring-graph construction, `max_windows` bounds
/// verification scans. Both default to 10^8.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_edges: u64,
    pub max_windows: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_edges: 100_000_000,
            max_windows: 100_000_000,
        }
    }
}

impl Budget {
    /// A budget with the same limit for edges and windows.
    pub fn uniform(limit: u64) -> Self {
        Budget {
            max_edges: limit,
            max_windows: limit,
        }
    }
}
