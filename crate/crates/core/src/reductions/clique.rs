//! t-Clique: does `H` contain `t` pairwise adjacent vertices?
//!
//! Game layout: agents `0..eta` are the vertices of `H`, followed by the four
//! special agents `a, b, c, d`. Every pair of agents has a nonzero weight.

use crate::game::{Game, Mode};
use crate::graph::Graph;
use crate::reductions::ReductionError;

pub const SOURCE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueInstance {
    graph: Graph,
    t: usize,
}

impl CliqueInstance {
    pub fn new(graph: Graph, t: usize) -> Result<Self, ReductionError> {
        if t == 0 {
            return Err(ReductionError::EmptyClique);
        }
        if t >= graph.n() {
            return Err(ReductionError::CliqueTooLarge { t, eta: graph.n() });
        }
        Ok(CliqueInstance { graph, t })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn t(&self) -> usize {
        self.t
    }
}

pub fn gen_clique(inst: &CliqueInstance) -> Result<Game, ReductionError> {
    let eta = inst.graph.n();
    let t = inst.t as i64;
    let e = eta as i64;
    let (a, b, c, d) = (eta, eta + 1, eta + 2, eta + 3);
    let mut edges = Vec::new();
    for u in 0..eta {
        for v in u + 1..eta {
            edges.push((u, v, if inst.graph.has_edge(u, v) { 2 } else { 1 }));
        }
        edges.push((a, u, -2 * t));
        edges.push((b, u, 2));
        edges.push((c, u, 1));
        edges.push((d, u, 1));
    }
    edges.push((a, b, 2 * t * t));
    edges.push((c, d, t - e));
    for (x, y) in [(a, c), (a, d), (b, c), (b, d)] {
        edges.push((x, y, -2 * e));
    }
    Ok(Game::symmetric(eta + 4, 2, Mode::KAshg, edges)?)
}

/// Exhaustive search over vertex subsets of size `t`.
pub fn source_oracle_clique(inst: &CliqueInstance) -> Result<bool, ReductionError> {
    let n = inst.graph.n();
    if n > SOURCE_LIMIT {
        return Err(ReductionError::TooLarge { what: "graph", size: n, limit: SOURCE_LIMIT });
    }
    Ok((0u32..1 << n).any(|mask| {
        if mask.count_ones() as usize != inst.t {
            return false;
        }
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| inst.graph.has_edge(u, v)))
    }))
}
