//! Undirected views of a game's preference digraph.

use std::collections::BTreeSet;

use crate::game::Game;

/// Simple undirected graph on `0..n` with sorted adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Underlying graph of all nonzero arcs, in either direction.
    pub fn underlying(game: &Game) -> Self {
        Graph::from_edges(game.n(), game.arcs().map(|(i, j, _)| (i, j)))
    }

    /// Graph of arcs with negative weight, in either direction.
    pub fn negative(game: &Game) -> Self {
        Graph::from_edges(game.n(), game.arcs().filter(|a| a.2 < 0).map(|(i, j, _)| (i, j)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_vertex_cover(&self, cover: &[usize]) -> bool {
        let mut inside = vec![false; self.n()];
        for &c in cover {
            inside[c] = true;
        }
        self.edges().iter().all(|&(u, v)| inside[u] || inside[v])
    }

    /// Connected components of the subgraph induced by `alive`, each sorted.
    pub fn components(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if !alive[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
                    if alive[v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Hammer–Simeone degree-sequence test for split graphs.
    pub fn is_split(&self) -> bool {
        let mut deg: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        let m = deg.iter().enumerate().filter(|&(i, &d)| d + 1 > i).count();
        let lhs: usize = deg[..m].iter().sum();
        let rhs: usize = m * m.saturating_sub(1) + deg[m..].iter().sum::<usize>();
        lhs == rhs
    }

    /// Builds an elimination forest by repeatedly deleting, in every connected
    /// component, the vertex with the smallest `(rank, id)`.
    pub fn elimination_forest(&self, rank: &[u32]) -> EliminationForest {
        let n = self.n();
        let mut parent = vec![None; n];
        let mut alive = vec![true; n];
        let mut stack: Vec<(Vec<usize>, Option<usize>)> =
            self.components(&alive).into_iter().map(|c| (c, None)).collect();
        while let Some((comp, above)) = stack.pop() {
            let root = *comp.iter().min_by_key(|&&v| (rank[v], v)).expect("nonempty component");
            parent[root] = above;
            alive[root] = false;
            let mut mask = vec![false; n];
            for &v in &comp {
                mask[v] = alive[v];
            }
            for sub in self.components(&mask) {
                stack.push((sub, Some(root)));
            }
        }
        EliminationForest { parent }
    }
}

/// Rooted forest over the vertices; a treedepth certificate when every edge
/// joins an ancestor with a descendant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationForest {
    pub parent: Vec<Option<usize>>,
}

impl EliminationForest {
    fn depth_of(&self, mut v: usize) -> usize {
        let mut d = 1;
        while let Some(p) = self.parent[v] {
            d += 1;
            v = p;
        }
        d
    }

    /// Number of vertices on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        (0..self.parent.len()).map(|v| self.depth_of(v)).max().unwrap_or(0)
    }

    fn is_ancestor(&self, anc: usize, mut v: usize) -> bool {
        while let Some(p) = self.parent[v] {
            if p == anc {
                return true;
            }
            v = p;
        }
        false
    }

    pub fn certifies(&self, graph: &Graph) -> bool {
        graph.edges().iter().all(|&(u, v)| self.is_ancestor(u, v) || self.is_ancestor(v, u))
    }
}
