//! Exact solving through an integer program per cover guess.

pub mod bnb;
pub mod model;
pub mod solve;

pub use bnb::{solve_model, solve_model_with_stats, BnbStats, IlpOutcome};
pub use model::{build_model, GuessContext, IlpModel, ModelError, Row, Sense, Variable};
pub use solve::{ilp_solve, ilp_solve_with, IlpStats};
