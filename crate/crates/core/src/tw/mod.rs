//! Exact solving of binary-valuation games over tree decompositions.

pub mod coloring;
pub mod decomposition;
pub mod dp;
pub mod nice;

use thiserror::Error;

pub use coloring::{coloring_shortcut, coloring_shortcut_with, ShortcutOutcome};
pub use decomposition::{compute_tree_decomposition, decompose, TdError, TreeDecomposition};
pub use dp::{tw_dp_solve, tw_dp_solve_with_stats, tw_solve, tw_solve_with, TwStats};
pub use nice::{to_nice, NiceDecomposition, NiceNode, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwError {
    #[error("valuations must all be -1 or +1")]
    NonBinary,
    #[error("the coloring shortcut only applies to exactly-k games")]
    ShortcutNeedsExactlyK,
    #[error("at most 64 coalitions are supported, got {0}")]
    TooManyCoalitions(usize),
    #[error("invalid tree decomposition: {0}")]
    Decomposition(#[from] TdError),
}
