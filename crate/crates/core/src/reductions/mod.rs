//! Generators that turn instances of classic hard problems into games with
//! the same answer, each with a brute-force decider for the source problem.

pub mod bin_packing;
pub mod clique;
pub mod equitable;
pub mod general_factors;

use thiserror::Error;

use crate::game::GameError;

pub use bin_packing::{gen_bin_packing, source_oracle_bin_packing, BinPackingInstance, BinPackingVariant};
pub use clique::{gen_clique, source_oracle_clique, CliqueInstance};
pub use equitable::{gen_equitable_partition, source_oracle_equitable, EquitablePartitionInstance, EquitableOptions};
pub use general_factors::{
    gen_general_factors, source_oracle_general_factors, GeneralFactorsInstance, GeneralFactorsLayout, ListGadget,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the multiset is empty")]
    Empty,
    #[error("values must be positive")]
    NonPositiveValue,
    #[error("expected an even number of values, got {0}")]
    OddCount(usize),
    #[error("values sum to {0}, which is odd")]
    OddSum(u64),
    #[error("the {size} largest values sum to {sum}, reaching half the total")]
    PromiseViolated { size: usize, sum: u64 },
    #[error("{what} of size {size} exceeds the enumeration limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("clique size {t} must be below the vertex count {eta}")]
    CliqueTooLarge { t: usize, eta: usize },
    #[error("clique size must be at least 1")]
    EmptyClique,
    #[error("the number of bins must be at least 1")]
    NoBins,
    #[error("values sum to {sum}, but {bins} bins of capacity {capacity} hold {expected}")]
    SumMismatch { sum: u64, bins: usize, capacity: u64, expected: u64 },
    #[error("{items} items cannot be split evenly over {bins} bins")]
    Unbalanced { items: usize, bins: usize },
    #[error("the graph is not bipartite")]
    NotBipartite,
    #[error("expected {expected} lists, one per vertex, got {got}")]
    ListCount { expected: usize, got: usize },
    #[error("constructed weights overflow 64-bit integers")]
    Overflow,
    #[error(transparent)]
    Game(#[from] GameError),
}
