use std::collections::BTreeSet;

use thiserror::Error;

use crate::game::Game;
use crate::graph::Graph;

/// Largest graph for which the exact elimination-ordering search runs.
pub const EXACT_TREEWIDTH_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdError {
    #[error("decomposition has no bags")]
    Empty,
    #[error("bag {bag} holds agent {agent}, out of range for {n} agents")]
    AgentOutOfRange { bag: usize, agent: usize, n: usize },
    #[error("tree edge ({0}, {1}) refers to a missing bag")]
    BadEdge(usize, usize),
    #[error("bags and edges do not form a tree")]
    NotATree,
    #[error("agent {0} is in no bag")]
    MissingAgent(usize),
    #[error("no bag holds both agents {0} and {1}")]
    UncoveredEdge(usize, usize),
    #[error("bags holding agent {0} are not connected")]
    Disconnected(usize),
}

/// Bags over a tree. Bags are sorted agent lists; `edges` join bag indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    n: usize,
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Checks the tree shape and that every agent's bags are connected;
    /// edge coverage needs the graph, see [`TreeDecomposition::validate`].
    pub fn new(n: usize, bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Result<Self, TdError> {
        let bags: Vec<Vec<usize>> = bags
            .into_iter()
            .map(|b| b.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        let td = TreeDecomposition { n, bags, edges };
        td.check_shape()?;
        Ok(td)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    fn check_shape(&self) -> Result<(), TdError> {
        let m = self.bags.len();
        if m == 0 {
            return Err(TdError::Empty);
        }
        for (bag, b) in self.bags.iter().enumerate() {
            if let Some(&agent) = b.iter().find(|&&a| a >= self.n) {
                return Err(TdError::AgentOutOfRange { bag, agent, n: self.n });
            }
        }
        if let Some(&(a, b)) = self.edges.iter().find(|&&(a, b)| a >= m || b >= m) {
            return Err(TdError::BadEdge(a, b));
        }
        if self.edges.len() + 1 != m {
            return Err(TdError::NotATree);
        }
        let adj = self.adjacency();
        let all = vec![true; m];
        if reach(&adj, 0, &all) != m {
            return Err(TdError::NotATree);
        }
        for v in 0..self.n {
            let holds: Vec<bool> = self.bags.iter().map(|b| b.binary_search(&v).is_ok()).collect();
            let Some(first) = holds.iter().position(|&h| h) else {
                return Err(TdError::MissingAgent(v));
            };
            if reach(&adj, first, &holds) != holds.iter().filter(|&&h| h).count() {
                return Err(TdError::Disconnected(v));
            }
        }
        Ok(())
    }

    /// Full validity for `graph`: tree shape, every agent present, every
    /// edge inside some bag, every agent's bags connected.
    pub fn validate(&self, graph: &Graph) -> Result<(), TdError> {
        self.check_shape()?;
        for (u, v) in graph.edges() {
            if !self.bags.iter().any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok()) {
                return Err(TdError::UncoveredEdge(u, v));
            }
        }
        Ok(())
    }
}

fn reach(adj: &[Vec<usize>], start: usize, allowed: &[bool]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 0;
    while let Some(x) = stack.pop() {
        count += 1;
        for &y in &adj[x] {
            if allowed[y] && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    count
}

/// Vertices outside `eliminated ∪ {v}` reachable from `v` through
/// eliminated vertices: `v`'s neighborhood at elimination time.
fn eliminated_neighbors(graph: &Graph, eliminated: u32, v: usize) -> u32 {
    let mut out = 0u32;
    let mut seen = 1u32 << v;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for &y in graph.neighbors(x) {
            let bit = 1u32 << y;
            if seen & bit != 0 {
                continue;
            }
            seen |= bit;
            if eliminated & bit != 0 {
                stack.push(y);
            } else {
                out |= bit;
            }
        }
    }
    out
}

/// Elimination ordering of minimum width, by dynamic programming over the
/// set of already eliminated vertices. Exponential; small graphs only.
pub fn exact_elimination_order(graph: &Graph) -> Vec<usize> {
    let n = graph.n();
    assert!(n <= 20, "exact search is limited to small graphs");
    let full = (1u32 << n) - 1;
    let mut best = vec![i32::MAX; 1 << n];
    let mut last = vec![0u8; 1 << n];
    best[0] = -1;
    for set in 1..=full {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = set & !(1 << v);
            let q = eliminated_neighbors(graph, before, v).count_ones() as i32;
            let w = best[before as usize].max(q);
            if w < best[set as usize] {
                best[set as usize] = w;
                last[set as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = last[set as usize] as usize;
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    order
}

/// Greedy ordering that always eliminates the vertex adding the fewest
/// fill edges (ties by degree, then id).
pub fn min_fill_order(graph: &Graph) -> Vec<usize> {
    let n = graph.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| graph.neighbors(v).clone()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| {
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                let mut fill = 0usize;
                for (i, &a) in nb.iter().enumerate() {
                    fill += nb[i + 1..].iter().filter(|&&b| !adj[a].contains(&b)).count();
                }
                (fill, nb.len(), v)
            })
            .expect("a live vertex remains");
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

pub fn elimination_order(graph: &Graph) -> Vec<usize> {
    if graph.n() <= EXACT_TREEWIDTH_LIMIT {
        exact_elimination_order(graph)
    } else {
        min_fill_order(graph)
    }
}

/// One bag per vertex: the vertex and its later neighbors in the filled
/// graph. A bag hangs below the bag of its earliest later neighbor; the
/// resulting roots are chained together.
pub fn from_elimination_order(graph: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = graph.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| graph.neighbors(v).clone()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&u| pos[u] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        match later.iter().map(|&u| pos[u]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(n, bags, edges).expect("elimination yields a tree decomposition")
}

pub fn decompose(graph: &Graph) -> TreeDecomposition {
    from_elimination_order(graph, &elimination_order(graph))
}

/// Decomposition of the underlying graph: exact width up to
/// [`EXACT_TREEWIDTH_LIMIT`] agents, min-fill above.
pub fn compute_tree_decomposition(game: &Game) -> TreeDecomposition {
    decompose(&Graph::underlying(game))
}
