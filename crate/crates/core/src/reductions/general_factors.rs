//! General factors on bipartite graphs: delete a set `S` of edges so that
//! every vertex `u` ends with degree in its list `L(u)`.
//!
//! Game layout, in agent order: twelve agents per vertex of `H`, the
//! enforcer, the list gadgets of every vertex (center, middles, leaves) and
//! four agents per edge of `H`. `GeneralFactorsLayout` records the roles.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::game::{Game, Mode};
use crate::graph::{EliminationForest, Graph};
use crate::reductions::ReductionError;

pub const SOURCE_LIMIT: usize = 20;

/// Vertex gadget edges, 1-based inside the gadget.
const GADGET_NEGATIVE: [(usize, usize); 11] =
    [(5, 1), (5, 2), (6, 2), (6, 3), (7, 3), (7, 4), (8, 1), (8, 9), (11, 4), (11, 10), (10, 4)];
const GADGET_POSITIVE: [(usize, usize); 2] = [(9, 1), (12, 10)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFactorsInstance {
    graph: Graph,
    lists: Vec<BTreeSet<usize>>,
    in_x: Vec<bool>,
}

impl GeneralFactorsInstance {
    /// `H` must be bipartite. Each component is 2-colored and its smaller
    /// side goes to `X`.
    pub fn new(graph: Graph, lists: Vec<BTreeSet<usize>>) -> Result<Self, ReductionError> {
        let n = graph.n();
        if lists.len() != n {
            return Err(ReductionError::ListCount { expected: n, got: lists.len() });
        }
        let mut side = vec![None; n];
        let mut in_x = vec![false; n];
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("queued vertices are colored");
                for &v in graph.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            comp.push(v);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return Err(ReductionError::NotBipartite),
                        Some(_) => {}
                    }
                }
            }
            let ones = comp.iter().filter(|&&v| side[v] == Some(true)).count();
            let x_is_true = 2 * ones < comp.len();
            for &v in &comp {
                in_x[v] = side[v] == Some(x_is_true);
            }
        }
        Ok(GeneralFactorsInstance { graph, lists, in_x })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn lists(&self) -> &[BTreeSet<usize>] {
        &self.lists
    }

    pub fn in_x(&self, v: usize) -> bool {
        self.in_x[v]
    }

    /// Edges of `H` as `(x, y)` with `x` on the `X` side.
    pub fn oriented_edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges().into_iter().map(|(u, v)| if self.in_x[u] { (u, v) } else { (v, u) }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListGadget {
    pub vertex: usize,
    pub value: usize,
    pub center: usize,
    pub middles: Vec<usize>,
    /// The first `value` leaves are wired to the vertex gadget.
    pub leaves: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFactorsLayout {
    /// `vertex[u][j]` is agent `u_{j+1}`.
    pub vertex: Vec<[usize; 12]>,
    pub enforcer: usize,
    pub lists: Vec<ListGadget>,
    /// `(x, y, [w1, w2, w3, w4])`; `w1` attaches to `x`, `w3` to `y`.
    pub edges: Vec<(usize, usize, [usize; 4])>,
    pub in_x: Vec<bool>,
    pub n_agents: usize,
}

impl GeneralFactorsLayout {
    pub fn new(inst: &GeneralFactorsInstance) -> Self {
        let nv = inst.graph.n();
        let mut next = 0;
        let mut take = |count: usize| {
            let start = next;
            next += count;
            start..next
        };
        let vertex: Vec<[usize; 12]> = (0..nv)
            .map(|_| {
                let r = take(12);
                std::array::from_fn(|j| r.start + j)
            })
            .collect();
        let enforcer = take(1).start;
        let mut lists = Vec::new();
        for (u, list) in inst.lists.iter().enumerate() {
            let width = list.iter().max().copied().unwrap_or(0);
            for &value in list {
                let center = take(1).start;
                lists.push(ListGadget { vertex: u, value, center, middles: take(width).collect(), leaves: take(width).collect() });
            }
        }
        let edges = inst
            .oriented_edges()
            .into_iter()
            .map(|(x, y)| {
                let r = take(4);
                (x, y, [r.start, r.start + 1, r.start + 2, r.start + 3])
            })
            .collect();
        GeneralFactorsLayout { vertex, enforcer, lists, edges, in_x: inst.in_x.clone(), n_agents: next }
    }

    /// Symmetric `(i, j, w)` edges of the game, all with weight `+1` or `-1`.
    pub fn game_edges(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for g in &self.vertex {
            out.extend(GADGET_NEGATIVE.iter().map(|&(a, b)| (g[a - 1], g[b - 1], -1)));
            out.extend(GADGET_POSITIVE.iter().map(|&(a, b)| (g[a - 1], g[b - 1], 1)));
            out.push((self.enforcer, g[3], -1));
        }
        for l in &self.lists {
            let g = &self.vertex[l.vertex];
            out.push((l.center, g[0], -1));
            out.push((l.center, g[3], 1));
            for (i, (&m, &leaf)) in l.middles.iter().zip(&l.leaves).enumerate() {
                out.push((l.center, m, -1));
                out.push((m, leaf, -1));
                if i < l.value {
                    out.push((leaf, g[1], 1));
                    out.push((leaf, g[2], -1));
                }
            }
        }
        for &(x, y, w) in &self.edges {
            for i in 0..4 {
                out.push((w[i], w[(i + 1) % 4], -1));
            }
            out.push((w[0], self.vertex[x][1], -1));
            out.push((w[0], self.vertex[x][2], 1));
            out.push((w[2], self.vertex[y][1], -1));
            out.push((w[2], self.vertex[y][2], 1));
        }
        out
    }

    /// One `role agent` line per agent, agents 1-based.
    pub fn manifest(&self) -> String {
        let mut s = String::new();
        for (u, g) in self.vertex.iter().enumerate() {
            for (j, &a) in g.iter().enumerate() {
                writeln!(s, "vertex {} x{} {}", u + 1, j + 1, a + 1).expect("writing to a string");
            }
        }
        writeln!(s, "enforcer {}", self.enforcer + 1).expect("writing to a string");
        for l in &self.lists {
            let (u, v) = (l.vertex + 1, l.value);
            writeln!(s, "list {u} {v} center {}", l.center + 1).expect("writing to a string");
            for (i, (&m, &leaf)) in l.middles.iter().zip(&l.leaves).enumerate() {
                writeln!(s, "list {u} {v} middle {} {}", i + 1, m + 1).expect("writing to a string");
                writeln!(s, "list {u} {v} leaf {} {}", i + 1, leaf + 1).expect("writing to a string");
            }
        }
        for &(x, y, w) in &self.edges {
            for (i, &a) in w.iter().enumerate() {
                writeln!(s, "edge {} {} w{} {}", x + 1, y + 1, i + 1, a + 1).expect("writing to a string");
            }
        }
        s
    }

    /// Elimination forest that removes the `X` vertex gadgets and the
    /// enforcer first, then the `Y` gadgets, then the list centers and edge
    /// endpoints. Its depth is linear in `|X|`.
    pub fn treedepth_certificate(&self, game_graph: &Graph) -> EliminationForest {
        let mut rank = vec![4u32; self.n_agents];
        rank[self.enforcer] = 0;
        for (u, g) in self.vertex.iter().enumerate() {
            for &a in g {
                rank[a] = if self.in_x[u] { 0 } else { 1 };
            }
        }
        for l in &self.lists {
            rank[l.center] = 2;
        }
        for &(_, _, w) in &self.edges {
            rank[w[0]] = 2;
            rank[w[2]] = 3;
        }
        game_graph.elimination_forest(&rank)
    }
}

pub fn gen_general_factors(inst: &GeneralFactorsInstance) -> Result<Game, ReductionError> {
    let layout = GeneralFactorsLayout::new(inst);
    Ok(Game::symmetric(layout.n_agents, 2, Mode::KAshg, layout.game_edges())?)
}

/// Exhaustive search over edge subsets `S`.
pub fn source_oracle_general_factors(inst: &GeneralFactorsInstance) -> Result<bool, ReductionError> {
    let edges = inst.graph.edges();
    let m = edges.len();
    if m > SOURCE_LIMIT {
        return Err(ReductionError::TooLarge { what: "edge set", size: m, limit: SOURCE_LIMIT });
    }
    Ok((0u32..1 << m).any(|deleted| {
        let mut degree = vec![0usize; inst.graph.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if deleted >> i & 1 == 0 {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        degree.iter().zip(&inst.lists).all(|(d, l)| l.contains(d))
    }))
}
