//! Exact solving parameterized by the vertex cover number.

pub mod cover;
pub mod dp;

pub use cover::{compute_vertex_cover, vertex_cover_within, CoverError, VertexCover};
pub use dp::{dp_state_count, vc_dp_solve, vc_dp_solve_with, VcDpConfig, VcDpError, VcDpStats};
