//! Exhaustive ground truth: walk every coalition structure and test it.
//!
//! Unlabeled partitions are generated as restricted growth strings by a
//! depth-first search that keeps agent utilities incrementally. In
//! size-constrained games each individually rational partition is then
//! matched to coalition labels by a small injection search, since the bounds
//! differ per label.

use thiserror::Error;

use crate::game::{CoalitionStructure, Game, Mode, SizeBound, Verdict};

pub const DEFAULT_KASHG_LIMIT: usize = 12;
pub const DEFAULT_SCC_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_agents_kashg: usize,
    pub max_agents_scc: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_agents_kashg: DEFAULT_KASHG_LIMIT, max_agents_scc: DEFAULT_SCC_LIMIT }
    }
}

impl OracleConfig {
    /// Same cap for both modes.
    pub fn with_limit(limit: usize) -> Self {
        OracleConfig { max_agents_kashg: limit, max_agents_scc: limit }
    }

    fn limit_for(&self, game: &Game) -> usize {
        match game.mode() {
            Mode::KAshg => self.max_agents_kashg,
            Mode::Scc(_) => self.max_agents_scc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} agents exceed the exhaustive-search limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleStats {
    /// Complete partitions examined.
    pub partitions: u64,
}

struct Search<'a> {
    game: &'a Game,
    k: usize,
    labels: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    util: Vec<i128>,
    partitions: u64,
}

impl<'a> Search<'a> {
    fn new(game: &'a Game) -> Self {
        Search {
            game,
            k: game.k(),
            labels: vec![0; game.n()],
            blocks: vec![Vec::new(); game.k()],
            util: vec![0; game.n()],
            partitions: 0,
        }
    }

    fn place(&mut self, agent: usize, block: usize) {
        for idx in 0..self.blocks[block].len() {
            let other = self.blocks[block][idx];
            self.util[other] += self.game.weight(other, agent) as i128;
            self.util[agent] += self.game.weight(agent, other) as i128;
        }
        self.blocks[block].push(agent);
        self.labels[agent] = block;
    }

    fn unplace(&mut self, agent: usize, block: usize) {
        self.blocks[block].pop();
        for idx in 0..self.blocks[block].len() {
            let other = self.blocks[block][idx];
            self.util[other] -= self.game.weight(other, agent) as i128;
            self.util[agent] -= self.game.weight(agent, other) as i128;
        }
    }

    /// Visits every individually rational partition; `visit` returns `true`
    /// to stop the walk.
    fn run(&mut self, exact_blocks: bool, visit: &mut dyn FnMut(&[usize], &[usize]) -> bool) -> bool {
        self.dfs(0, 0, exact_blocks, visit)
    }

    fn dfs(
        &mut self,
        agent: usize,
        used: usize,
        exact_blocks: bool,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> bool {
        let n = self.labels.len();
        if agent == n {
            self.partitions += 1;
            if self.util.iter().all(|&u| u >= 0) {
                let sizes: Vec<usize> = self.blocks[..used].iter().map(Vec::len).collect();
                return visit(&self.labels, &sizes);
            }
            return false;
        }
        let top = (used + 1).min(self.k);
        for block in 0..top {
            let used_after = used.max(block + 1);
            if exact_blocks && used_after + (n - agent - 1) < self.k {
                continue;
            }
            self.place(agent, block);
            let stop = self.dfs(agent + 1, used_after, exact_blocks, visit);
            self.unplace(agent, block);
            if stop {
                return true;
            }
        }
        false
    }
}

/// Maps blocks (in first-occurrence order) injectively onto labels so every
/// size fits; labels left unused must admit an empty coalition. Calls
/// `found` for each injection in lexicographic order until it returns `true`.
fn injections(sizes: &[usize], bounds: &[SizeBound], found: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(
        b: usize,
        sizes: &[usize],
        bounds: &[SizeBound],
        taken: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if b == sizes.len() {
            let rest_ok = bounds.iter().zip(taken.iter()).all(|(bd, &t)| t || bd.lower == 0);
            return rest_ok && found(chosen);
        }
        for label in 0..bounds.len() {
            if taken[label] || !bounds[label].contains(sizes[b]) {
                continue;
            }
            taken[label] = true;
            chosen.push(label);
            let stop = go(b + 1, sizes, bounds, taken, chosen, found);
            chosen.pop();
            taken[label] = false;
            if stop {
                return true;
            }
        }
        false
    }
    go(0, sizes, bounds, &mut vec![false; bounds.len()], &mut Vec::new(), found)
}

fn check_limit(game: &Game, config: &OracleConfig) -> Result<(), OracleError> {
    let limit = config.limit_for(game);
    if game.n() > limit {
        return Err(OracleError::TooLarge { n: game.n(), limit });
    }
    Ok(())
}

pub fn oracle_solve_with_stats(game: &Game, config: &OracleConfig) -> Result<(Verdict, OracleStats), OracleError> {
    check_limit(game, config)?;
    let mut search = Search::new(game);
    let mut found: Option<Vec<usize>> = None;
    match game.mode() {
        Mode::KAshg => {
            search.run(true, &mut |labels, _| {
                found = Some(labels.to_vec());
                true
            });
        }
        Mode::Scc(bounds) => {
            search.run(false, &mut |labels, sizes| {
                injections(sizes, bounds, &mut |inj| {
                    found = Some(labels.iter().map(|&b| inj[b]).collect());
                    true
                })
            });
        }
    }
    let stats = OracleStats { partitions: search.partitions };
    let verdict = match found {
        Some(assignment) => Verdict::Yes(CoalitionStructure::new(game.k(), assignment).expect("labels below k")),
        None => Verdict::No,
    };
    Ok((verdict, stats))
}

/// Lexicographically first individually rational structure, or `No`.
pub fn oracle_solve(game: &Game, config: &OracleConfig) -> Result<Verdict, OracleError> {
    oracle_solve_with_stats(game, config).map(|(v, _)| v)
}

/// Number of labeled coalition structures that certify the game.
pub fn oracle_count(game: &Game, config: &OracleConfig) -> Result<u64, OracleError> {
    check_limit(game, config)?;
    let mut search = Search::new(game);
    let mut count = 0u64;
    match game.mode() {
        Mode::KAshg => {
            let labelings: u64 = (1..=game.k() as u64).product();
            search.run(true, &mut |_, _| {
                count += labelings;
                false
            });
        }
        Mode::Scc(bounds) => {
            search.run(false, &mut |_, sizes| {
                injections(sizes, bounds, &mut |_| {
                    count += 1;
                    false
                });
                false
            });
        }
    }
    Ok(count)
}
