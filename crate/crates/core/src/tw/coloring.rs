//! With at least `width + 1` coalitions a binary exactly-k game is always
//! solvable: color the underlying graph properly with at most `width + 1`
//! colors, then split color classes until there are exactly `k`. Every
//! class is independent, so every agent has utility zero.

use crate::game::{CoalitionStructure, Game};
use crate::graph::Graph;
use crate::tw::decomposition::{decompose, TreeDecomposition};
use crate::tw::TwError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShortcutOutcome {
    Yes(CoalitionStructure),
    NotApplicable,
}

/// Greedy coloring along a preorder of the decomposition: each agent is
/// colored at the topmost bag holding it, where all its already colored
/// neighbors also sit. Uses at most `width + 1` colors.
pub fn color_from_decomposition(td: &TreeDecomposition, graph: &Graph) -> Vec<usize> {
    let adj = td.adjacency();
    let mut color = vec![usize::MAX; td.n()];
    let mut stack = vec![(0usize, usize::MAX)];
    while let Some((t, parent)) = stack.pop() {
        for &v in &td.bags()[t] {
            if color[v] != usize::MAX {
                continue;
            }
            let taken: Vec<usize> =
                td.bags()[t].iter().filter(|&&x| graph.has_edge(v, x) && color[x] != usize::MAX).map(|&x| color[x]).collect();
            color[v] = (0..).find(|c| !taken.contains(c)).expect("a free color exists");
        }
        for &c in adj[t].iter().rev() {
            if c != parent {
                stack.push((c, t));
            }
        }
    }
    color
}

pub fn coloring_shortcut(game: &Game) -> Result<ShortcutOutcome, TwError> {
    coloring_shortcut_with(game, &decompose(&Graph::underlying(game)))
}

pub fn coloring_shortcut_with(game: &Game, td: &TreeDecomposition) -> Result<ShortcutOutcome, TwError> {
    if !game.is_binary() {
        return Err(TwError::NonBinary);
    }
    if game.mode().is_scc() {
        return Err(TwError::ShortcutNeedsExactlyK);
    }
    let n = game.n();
    let k = game.k();
    if k > n {
        return Ok(ShortcutOutcome::NotApplicable);
    }
    if k == n {
        let singles = CoalitionStructure::new(k, (0..n).collect()).expect("labels below k");
        return Ok(ShortcutOutcome::Yes(singles));
    }
    let graph = Graph::underlying(game);
    td.validate(&graph)?;
    let mut color = color_from_decomposition(td, &graph);
    let mut used = color.iter().max().map_or(0, |&c| c + 1);
    if used > k {
        return Ok(ShortcutOutcome::NotApplicable);
    }
    while used < k {
        // lowest class with two members gives up its largest agent
        let class = (0..used)
            .find(|&c| color.iter().filter(|&&x| x == c).count() >= 2)
            .expect("fewer classes than agents leaves a class to split");
        let mover = (0..n).rev().find(|&a| color[a] == class).expect("class is nonempty");
        color[mover] = used;
        used += 1;
    }
    Ok(ShortcutOutcome::Yes(CoalitionStructure::new(k, color).expect("labels below k")))
}
