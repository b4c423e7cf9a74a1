use thiserror::Error;

use crate::game::{Agent, Game};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("arc between agents {0} and {1} has no endpoint in the cover")]
    Uncovered(Agent, Agent),
    #[error("agent {agent} is out of range for {n} agents")]
    AgentOutOfRange { agent: Agent, n: usize },
}

/// A vertex cover `C` of the underlying graph and the independent rest `I`,
/// both in ascending agent order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCover {
    cover: Vec<Agent>,
    independent: Vec<Agent>,
}

impl VertexCover {
    pub fn new(game: &Game, cover: impl IntoIterator<Item = Agent>) -> Result<Self, CoverError> {
        let n = game.n();
        let mut inside = vec![false; n];
        for a in cover {
            if a >= n {
                return Err(CoverError::AgentOutOfRange { agent: a, n });
            }
            inside[a] = true;
        }
        if let Some((i, j, _)) = game.arcs().find(|&(i, j, _)| !inside[i] && !inside[j]) {
            return Err(CoverError::Uncovered(i, j));
        }
        Ok(VertexCover {
            cover: (0..n).filter(|&a| inside[a]).collect(),
            independent: (0..n).filter(|&a| !inside[a]).collect(),
        })
    }

    pub fn cover(&self) -> &[Agent] {
        &self.cover
    }

    pub fn independent(&self) -> &[Agent] {
        &self.independent
    }

    pub fn theta(&self) -> usize {
        self.cover.len()
    }
}

/// Minimum vertex cover of the underlying graph.
pub fn compute_vertex_cover(game: &Game) -> VertexCover {
    let graph = Graph::underlying(game);
    let cover = cover_within(&graph, graph.n()).expect("all agents form a cover");
    VertexCover::new(game, cover).expect("search returns a cover")
}

/// A minimum vertex cover of the underlying graph, if it has at most
/// `budget` agents.
pub fn vertex_cover_within(game: &Game, budget: usize) -> Option<VertexCover> {
    let graph = Graph::underlying(game);
    cover_within(&graph, budget).map(|c| VertexCover::new(game, c).expect("search returns a cover"))
}

/// Size of a greedy maximal matching, a lower bound on any cover.
fn matching_bound(graph: &Graph, alive: &[bool]) -> usize {
    let mut used = vec![false; graph.n()];
    let mut size = 0;
    for (u, v) in graph.edges() {
        if alive[u] && alive[v] && !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            size += 1;
        }
    }
    size
}

pub(crate) fn cover_within(graph: &Graph, budget: usize) -> Option<Vec<usize>> {
    let mut alive = vec![true; graph.n()];
    let mut cover = min_cover(graph, &mut alive, budget)?;
    cover.sort_unstable();
    Some(cover)
}

fn live_degree(graph: &Graph, alive: &[bool], v: usize) -> usize {
    graph.neighbors(v).iter().filter(|&&u| alive[u]).count()
}

/// Minimum cover of the subgraph induced by `alive` when it has at most
/// `cap` vertices. Components are solved one at a time.
fn min_cover(graph: &Graph, alive: &mut [bool], cap: usize) -> Option<Vec<usize>> {
    let comps: Vec<Vec<usize>> =
        graph.components(alive).into_iter().filter(|c| c.len() > 1).collect();
    if comps.len() == 1 {
        return connected_min_cover(graph, alive, cap);
    }
    let mut cover = Vec::new();
    for comp in comps {
        let mut mask = vec![false; graph.n()];
        for &v in &comp {
            mask[v] = true;
        }
        cover.extend(connected_min_cover(graph, &mut mask, cap - cover.len())?);
    }
    Some(cover)
}

fn without(graph: &Graph, alive: &mut [bool], vs: &[usize], cap: usize) -> Option<Vec<usize>> {
    if vs.len() > cap {
        return None;
    }
    for &x in vs {
        alive[x] = false;
    }
    let rest = min_cover(graph, alive, cap - vs.len());
    for &x in vs {
        alive[x] = true;
    }
    rest.map(|mut c| {
        c.extend_from_slice(vs);
        c
    })
}

fn connected_min_cover(graph: &Graph, alive: &mut [bool], cap: usize) -> Option<Vec<usize>> {
    let degree: Vec<(usize, usize)> =
        (0..graph.n()).filter(|&v| alive[v]).map(|v| (live_degree(graph, alive, v), v)).filter(|&(d, _)| d > 0).collect();
    let Some(&(max_degree, v)) = degree.iter().max_by_key(|&&(d, v)| (d, std::cmp::Reverse(v))) else {
        return Some(Vec::new());
    };
    if matching_bound(graph, alive) > cap {
        return None;
    }
    // Taking the neighbor of a pendant vertex is never worse.
    if let Some(&(_, p)) = degree.iter().find(|&&(d, _)| d == 1) {
        let u = *graph.neighbors(p).iter().find(|&&u| alive[u]).expect("pendant has a live neighbor");
        return without(graph, alive, &[u], cap);
    }
    if max_degree == 2 {
        return cycle_cover(graph, alive, degree[0].1, degree.len(), cap);
    }
    let take_v = without(graph, alive, &[v], cap);
    let cap = take_v.as_ref().map_or(cap, |c| c.len() - 1);
    let nbrs: Vec<usize> = graph.neighbors(v).iter().copied().filter(|&u| alive[u]).collect();
    without(graph, alive, &nbrs, cap).or(take_v)
}

/// Every other vertex around a connected 2-regular component.
fn cycle_cover(graph: &Graph, alive: &[bool], start: usize, len: usize, cap: usize) -> Option<Vec<usize>> {
    if len.div_ceil(2) > cap {
        return None;
    }
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < len {
        let next = *graph.neighbors(cur).iter().find(|&&u| alive[u] && u != prev).expect("cycle continues");
        prev = cur;
        cur = next;
        order.push(cur);
    }
    Some(order.into_iter().step_by(2).collect())
}
