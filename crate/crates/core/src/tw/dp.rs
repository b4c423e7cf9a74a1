//! Dynamic program over a nice tree decomposition for binary valuations.
//!
//! A state records, for the current bag, each agent's coalition and its
//! accumulated weight toward same-coalition agents seen so far, plus which
//! coalitions are already nonempty among forgotten agents (exactly-k games)
//! or how many forgotten agents each coalition holds (size-bounded games).
//! An agent's neighbors are all seen by the time it is forgotten, so its
//! weight is then final and must be nonnegative.

use std::collections::HashMap;

use crate::game::{CoalitionStructure, Game, Mode, Verdict};
use crate::graph::Graph;
use crate::tw::coloring::{coloring_shortcut_with, ShortcutOutcome};
use crate::tw::decomposition::{decompose, TreeDecomposition};
use crate::tw::nice::{to_nice, NiceDecomposition, NodeKind};
use crate::tw::TwError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    assign: Vec<u8>,
    weight: Vec<i32>,
    occupied: u64,
    sizes: Vec<u32>,
}

#[derive(Debug, Clone, Copy)]
enum Link {
    Leaf,
    Introduce { child: usize, coalition: u8 },
    Forget { child: usize },
    Join { left: usize, right: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TwStats {
    pub width: usize,
    pub nodes: usize,
    /// Largest state table at a single node.
    pub peak_states: usize,
    pub used_shortcut: bool,
}

struct Table {
    states: Vec<State>,
    links: Vec<Link>,
    index: HashMap<State, usize>,
}

impl Table {
    fn new() -> Self {
        Table { states: Vec::new(), links: Vec::new(), index: HashMap::new() }
    }

    fn insert(&mut self, state: State, link: Link) {
        if self.index.contains_key(&state) {
            return;
        }
        self.index.insert(state.clone(), self.states.len());
        self.states.push(state);
        self.links.push(link);
    }
}

struct Dp<'a> {
    game: &'a Game,
    k: usize,
    /// Saturation value per agent: its number of negative out-arcs. Once the
    /// accumulated weight reaches it, no later neighbor can make it negative.
    cap: Vec<i32>,
}

impl Dp<'_> {
    fn add(&self, agent: usize, current: i32, delta: i64) -> i32 {
        let cap = self.cap[agent];
        if current >= cap {
            return cap;
        }
        (current + delta as i32).min(cap)
    }

    fn within_upper(&self, state: &State) -> bool {
        let Some(bounds) = self.game.bounds() else { return true };
        let mut count: Vec<u32> = state.sizes.clone();
        for &c in &state.assign {
            count[c as usize] += 1;
        }
        count.iter().zip(bounds).all(|(&c, b)| c as usize <= b.upper)
    }

    fn accepts(&self, state: &State) -> bool {
        match self.game.mode() {
            Mode::KAshg => state.occupied.count_ones() as usize == self.k,
            Mode::Scc(bounds) => state.sizes.iter().zip(bounds).all(|(&s, b)| b.contains(s as usize)),
        }
    }

    fn introduce(&self, child_bag: &[usize], bag: &[usize], v: usize, child: &Table) -> Table {
        let pos = bag.binary_search(&v).expect("introduced agent is in the bag");
        let mut out = Table::new();
        for (idx, s) in child.states.iter().enumerate() {
            for c in 0..self.k {
                let mut assign = s.assign.clone();
                assign.insert(pos, c as u8);
                let mut weight = s.weight.clone();
                weight.insert(pos, 0);
                let mut own = 0i32;
                for (i, &x) in child_bag.iter().enumerate() {
                    if s.assign[i] as usize != c {
                        continue;
                    }
                    let j = if i < pos { i } else { i + 1 };
                    own = self.add(v, own, self.game.weight(v, x));
                    weight[j] = self.add(x, weight[j], self.game.weight(x, v));
                }
                weight[pos] = own;
                let state = State { assign, weight, occupied: s.occupied, sizes: s.sizes.clone() };
                if self.within_upper(&state) {
                    out.insert(state, Link::Introduce { child: idx, coalition: c as u8 });
                }
            }
        }
        out
    }

    fn forget(&self, child_bag: &[usize], v: usize, child: &Table) -> Table {
        let pos = child_bag.binary_search(&v).expect("forgotten agent is in the child bag");
        let mut out = Table::new();
        for (idx, s) in child.states.iter().enumerate() {
            if s.weight[pos] < 0 {
                continue;
            }
            let c = s.assign[pos] as usize;
            let mut state = s.clone();
            state.assign.remove(pos);
            state.weight.remove(pos);
            state.occupied |= 1 << c;
            if !state.sizes.is_empty() {
                state.sizes[c] += 1;
            }
            out.insert(state, Link::Forget { child: idx });
        }
        out
    }

    fn join(&self, bag: &[usize], left: &Table, right: &Table) -> Table {
        let mut by_assign: HashMap<&[u8], Vec<usize>> = HashMap::new();
        for (idx, s) in right.states.iter().enumerate() {
            by_assign.entry(&s.assign).or_default().push(idx);
        }
        let mut out = Table::new();
        for (li, a) in left.states.iter().enumerate() {
            let Some(matches) = by_assign.get(a.assign.as_slice()) else { continue };
            // weight inside the bag is counted on both sides
            let internal: Vec<i64> = bag
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    bag.iter()
                        .enumerate()
                        .filter(|&(j, _)| a.assign[j] == a.assign[i])
                        .map(|(_, &y)| if x == y { 0 } else { self.game.weight(x, y) })
                        .sum()
                })
                .collect();
            for &ri in matches {
                let b = &right.states[ri];
                let weight = (0..bag.len())
                    .map(|i| {
                        let x = bag[i];
                        let cap = self.cap[x];
                        if a.weight[i] >= cap || b.weight[i] >= cap {
                            cap
                        } else {
                            ((a.weight[i] as i64 + b.weight[i] as i64 - internal[i]) as i32).min(cap)
                        }
                    })
                    .collect();
                let sizes = a.sizes.iter().zip(&b.sizes).map(|(x, y)| x + y).collect();
                let state = State { assign: a.assign.clone(), weight, occupied: a.occupied | b.occupied, sizes };
                if self.within_upper(&state) {
                    out.insert(state, Link::Join { left: li, right: ri });
                }
            }
        }
        out
    }
}

/// Runs the DP on a nice decomposition of the underlying graph.
pub fn tw_dp_solve_with_stats(game: &Game, nice: &NiceDecomposition) -> Result<(Verdict, TwStats), TwError> {
    if !game.is_binary() {
        return Err(TwError::NonBinary);
    }
    let k = game.k();
    if k > 64 {
        return Err(TwError::TooManyCoalitions(k));
    }
    let n = game.n();
    let cap: Vec<i32> =
        (0..n).map(|a| game.out_arcs(a).iter().filter(|&&(_, w)| w < 0).count() as i32).collect();
    let dp = Dp { game, k, cap };
    let mut tables: Vec<Table> = Vec::with_capacity(nice.nodes.len());
    let mut stats = TwStats { width: nice.width(), nodes: nice.nodes.len(), ..TwStats::default() };
    for node in &nice.nodes {
        let table = match node.kind {
            NodeKind::Leaf => {
                let mut t = Table::new();
                let sizes = if game.mode().is_scc() { vec![0; k] } else { Vec::new() };
                t.insert(State { assign: vec![], weight: vec![], occupied: 0, sizes }, Link::Leaf);
                t
            }
            NodeKind::Introduce(v) => {
                let c = node.children[0];
                dp.introduce(&nice.nodes[c].bag, &node.bag, v, &tables[c])
            }
            NodeKind::Forget(v) => {
                let c = node.children[0];
                dp.forget(&nice.nodes[c].bag, v, &tables[c])
            }
            NodeKind::Join => dp.join(&node.bag, &tables[node.children[0]], &tables[node.children[1]]),
        };
        stats.peak_states = stats.peak_states.max(table.states.len());
        tables.push(table);
    }

    let root = nice.root();
    let Some(accepted) = tables[root].states.iter().position(|s| dp.accepts(s)) else {
        return Ok((Verdict::No, stats));
    };
    let mut assignment = vec![usize::MAX; n];
    let mut stack = vec![(root, accepted)];
    while let Some((node, idx)) = stack.pop() {
        match tables[node].links[idx] {
            Link::Leaf => {}
            Link::Introduce { child, coalition } => {
                let NodeKind::Introduce(v) = nice.nodes[node].kind else { unreachable!() };
                assignment[v] = coalition as usize;
                stack.push((nice.nodes[node].children[0], child));
            }
            Link::Forget { child } => stack.push((nice.nodes[node].children[0], child)),
            Link::Join { left, right } => {
                stack.push((nice.nodes[node].children[0], left));
                stack.push((nice.nodes[node].children[1], right));
            }
        }
    }
    assert!(assignment.iter().all(|&c| c < k), "every agent is introduced");
    Ok((Verdict::Yes(CoalitionStructure::new(k, assignment).expect("labels below k")), stats))
}

pub fn tw_dp_solve(game: &Game, nice: &NiceDecomposition) -> Result<Verdict, TwError> {
    tw_dp_solve_with_stats(game, nice).map(|(v, _)| v)
}

/// Shortcut when coalitions outnumber the width, DP otherwise. Uses `td`
/// when given (it must decompose the underlying graph).
pub fn tw_solve_with(game: &Game, td: Option<&TreeDecomposition>) -> Result<(Verdict, TwStats), TwError> {
    if !game.is_binary() {
        return Err(TwError::NonBinary);
    }
    let graph = Graph::underlying(game);
    let computed;
    let td = match td {
        Some(td) => {
            td.validate(&graph)?;
            td
        }
        None => {
            computed = decompose(&graph);
            &computed
        }
    };
    let k = game.k();
    if !game.mode().is_scc() {
        if k > game.n() {
            return Ok((Verdict::No, TwStats { width: td.width(), ..TwStats::default() }));
        }
        if k > td.width() {
            if let ShortcutOutcome::Yes(s) = coloring_shortcut_with(game, td)? {
                let stats = TwStats { width: td.width(), used_shortcut: true, ..TwStats::default() };
                return Ok((Verdict::Yes(s), stats));
            }
        }
    }
    tw_dp_solve_with_stats(game, &to_nice(td))
}

pub fn tw_solve(game: &Game) -> Result<Verdict, TwError> {
    tw_solve_with(game, None).map(|(v, _)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{check_certificate, SizeBound};
    use crate::oracle::{oracle_solve, OracleConfig};

    fn lcg(seed: &mut u64) -> u64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        *seed >> 33
    }

    fn random_binary(seed: &mut u64, n: usize, k: usize, scc: bool) -> Game {
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && lcg(seed) % 3 == 0 {
                    arcs.push((i, j, if lcg(seed) % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        let mode = if scc {
            let per = n.div_ceil(k) + (lcg(seed) % 2) as usize;
            let lb = (lcg(seed) % 2) as usize;
            let lb = if lb * k > n { 0 } else { lb };
            Mode::Scc(vec![SizeBound::new(lb, per); k])
        } else {
            Mode::KAshg
        };
        Game::new(n, k, mode, arcs).unwrap()
    }

    #[test]
    fn path_needs_two_coalitions() {
        let g = Game::symmetric(3, 2, Mode::KAshg, [(0, 1, -1), (1, 2, -1)]).unwrap();
        let nice = to_nice(&decompose(&Graph::underlying(&g)));
        let v = tw_dp_solve(&g, &nice).unwrap();
        let s = v.structure().unwrap();
        assert_eq!(s.coalition_of(0), s.coalition_of(2));
        assert_ne!(s.coalition_of(0), s.coalition_of(1));
    }

    #[test]
    fn dp_agrees_with_oracle() {
        let mut seed = 7;
        for round in 0..400 {
            let n = 1 + lcg(&mut seed) as usize % 8;
            let k = 1 + lcg(&mut seed) as usize % 4;
            let g = random_binary(&mut seed, n, k, round % 2 == 1);
            let expected = oracle_solve(&g, &OracleConfig::default()).unwrap();
            let nice = to_nice(&decompose(&Graph::underlying(&g)));
            let got = tw_dp_solve(&g, &nice).unwrap();
            assert_eq!(got.is_yes(), expected.is_yes(), "{g:?}");
            if let Verdict::Yes(s) = &got {
                assert!(check_certificate(&g, s).is_valid());
            }
            let top = tw_solve(&g).unwrap();
            assert_eq!(top.is_yes(), expected.is_yes());
        }
    }

    #[test]
    fn verdict_ignores_choice_of_decomposition() {
        let mut seed = 41;
        for _ in 0..100 {
            let n = 2 + lcg(&mut seed) as usize % 7;
            let g = random_binary(&mut seed, n, 2, false);
            let graph = Graph::underlying(&g);
            let exact = to_nice(&decompose(&graph));
            // a single bag holding everybody is valid too
            let fat = TreeDecomposition::new(n, vec![(0..n).collect()], vec![]).unwrap();
            let a = tw_dp_solve(&g, &exact).unwrap().is_yes();
            let b = tw_dp_solve(&g, &to_nice(&fat)).unwrap().is_yes();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn refusals_and_pigeonhole() {
        let weighted = Game::symmetric(2, 1, Mode::KAshg, [(0, 1, 3)]).unwrap();
        assert_eq!(tw_solve(&weighted), Err(TwError::NonBinary));
        let crowded = Game::new(2, 3, Mode::KAshg, []).unwrap();
        assert_eq!(tw_solve(&crowded).unwrap(), Verdict::No);
    }

    #[test]
    fn shortcut_taken_above_width() {
        let g = Game::symmetric(4, 3, Mode::KAshg, [(0, 1, -1), (1, 2, -1), (2, 3, -1)]).unwrap();
        let (v, stats) = tw_solve_with(&g, None).unwrap();
        assert!(stats.used_shortcut);
        assert!(check_certificate(&g, v.structure().unwrap()).is_valid());
    }

    #[test]
    fn rejects_foreign_decomposition() {
        let g = Game::symmetric(3, 1, Mode::KAshg, [(0, 2, 1)]).unwrap();
        let td = TreeDecomposition::new(3, vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]).unwrap();
        assert!(matches!(tw_solve_with(&g, Some(&td)), Err(TwError::Decomposition(_))));
    }
}
