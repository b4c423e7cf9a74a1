//! Text formats: game instances, solutions, and reduction sources.

pub mod instance;
pub mod solution;
pub mod source;

pub use instance::{parse_instance, render_instance, ParseError, ParseErrorKind, ParsedInstance};
pub use solution::{parse_solution, render_solution, SolutionFile};
pub use source::{
    parse_bin_packing_source, parse_clique_source, parse_equitable_source, parse_general_factors_source, SourceError,
};
