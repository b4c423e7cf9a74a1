//! Deciding whether a constrained additively separable hedonic game admits an
//! individually rational coalition structure.

pub mod bench;
pub mod dispatch;
pub mod game;
pub mod graph;
pub mod ilp;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod random;
pub mod reductions;
pub mod tw;
pub mod vc;

pub use game::{
    ashg_utility, check_certificate, fhg_utility, ir_equivalence_witness, is_individually_rational, mfhg_utility,
    solve_k_equals_1, Agent, Certificate, CoalitionStructure, Game, GameError, Mode, Semantics, SizeBound,
    StructureError, Verdict, Violation,
};
