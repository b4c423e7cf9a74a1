//! Seeded random games. Every generator draws from ChaCha8 seeded with a
//! `u64`, so the same parameters and seed give the same game on every
//! platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::game::{Game, GameError, Mode, SizeBound};
use crate::ilp::{IlpModel, Row, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RandomError {
    #[error("weight range [{0}, {1}] holds no nonzero value")]
    EmptyWeightRange(i64, i64),
    #[error("density {0} is outside [0, 1]")]
    BadDensity(String),
    #[error("clique part of size {clique} exceeds {n} agents")]
    CliqueTooLarge { clique: usize, n: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    pub k: usize,
    /// Probability of each arc (or edge, when symmetric).
    pub density: f64,
    pub wmin: i64,
    pub wmax: i64,
    pub symmetric: bool,
    /// Draw feasible size bounds and emit a size-constrained game.
    pub scc: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { n: 8, k: 2, density: 0.5, wmin: -3, wmax: 3, symmetric: false, scc: false }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check(params: &RandomParams) -> Result<(), RandomError> {
    if !(0.0..=1.0).contains(&params.density) {
        return Err(RandomError::BadDensity(params.density.to_string()));
    }
    if params.wmin > params.wmax || (params.wmin == 0 && params.wmax == 0) {
        return Err(RandomError::EmptyWeightRange(params.wmin, params.wmax));
    }
    Ok(())
}

/// Uniform over the nonzero integers in `[wmin, wmax]`.
fn weight(rng: &mut ChaCha8Rng, wmin: i64, wmax: i64) -> i64 {
    loop {
        let w = rng.random_range(wmin..=wmax);
        if w != 0 {
            return w;
        }
    }
}

fn mode(rng: &mut ChaCha8Rng, params: &RandomParams) -> Mode {
    if params.scc {
        Mode::Scc(random_bounds(rng, params.n, params.k))
    } else {
        Mode::KAshg
    }
}

/// Each pair is joined independently with probability `density`.
pub fn random_game(params: &RandomParams, seed: u64) -> Result<Game, RandomError> {
    check(params)?;
    let mut rng = rng(seed);
    let mode = mode(&mut rng, params);
    let n = params.n;
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || (params.symmetric && j < i) {
                continue;
            }
            if rng.random_bool(params.density) {
                arcs.push((i, j, weight(&mut rng, params.wmin, params.wmax)));
            }
        }
    }
    let game = if params.symmetric {
        Game::symmetric(n, params.k, mode, arcs)?
    } else {
        Game::new(n, params.k, mode, arcs)?
    };
    Ok(game)
}

/// Symmetric game whose underlying graph is split: agents `0..clique` form a
/// clique, the rest are independent and join each clique agent with
/// probability `density`.
pub fn random_split_game(params: &RandomParams, clique: usize, seed: u64) -> Result<Game, RandomError> {
    check(params)?;
    if clique > params.n {
        return Err(RandomError::CliqueTooLarge { clique, n: params.n });
    }
    let mut rng = rng(seed);
    let mode = mode(&mut rng, params);
    let mut edges = Vec::new();
    for i in 0..clique {
        for j in i + 1..params.n {
            if j < clique || rng.random_bool(params.density) {
                edges.push((i, j, weight(&mut rng, params.wmin, params.wmax)));
            }
        }
    }
    Ok(Game::symmetric(params.n, params.k, mode, edges)?)
}

/// Bounds that some structure satisfies: draw target sizes summing to `n`,
/// then loosen each side by up to two. Upper bounds come out nonincreasing.
pub fn random_bounds(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<SizeBound> {
    let mut sizes = vec![0usize; k];
    for _ in 0..n {
        sizes[rng.random_range(0..k)] += 1;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut upper: Vec<usize> = sizes.iter().map(|&s| (s + rng.random_range(0..=2)).min(n)).collect();
    upper.sort_unstable_by(|a, b| b.cmp(a));
    // the j-th largest loosened size still covers the j-th largest size
    sizes.iter().zip(upper).map(|(&s, u)| SizeBound::new(s.saturating_sub(rng.random_range(0..=2)), u)).collect()
}

/// Binary model with `d` variables: blocks of up to four variables each get
/// one local row, and up to three global rows span random subsets. Row
/// senses and right-hand sides are mixed so both outcomes are common.
pub fn random_ilp_model(d: usize, seed: u64) -> IlpModel {
    let mut rng = rng(seed);
    let vars = (0..d).map(|i| Variable { agent: i, coalition: 0, lower: 0, upper: 1 }).collect();
    let random_row = |rng: &mut ChaCha8Rng, vars: &[usize], cmax: i64| {
        let terms: Vec<(usize, i64)> = vars.iter().map(|&v| (v, weight(rng, -cmax, cmax))).collect();
        let lo: i64 = terms.iter().map(|t| t.1.min(0)).sum();
        let hi: i64 = terms.iter().map(|t| t.1.max(0)).sum();
        let a = rng.random_range(lo - 1..=hi + 1);
        match rng.random_range(0..4) {
            0 => Row::ge(terms, a),
            1 => Row::le(terms, a),
            2 => Row::eq(terms, a),
            _ => Row::range(terms, a, a + rng.random_range(0..=2)),
        }
    };
    let mut bricks = Vec::new();
    let mut start = 0;
    while start < d {
        let len = rng.random_range(1..=4).min(d - start);
        let block: Vec<usize> = (start..start + len).collect();
        bricks.push(random_row(&mut rng, &block, 2));
        start += len;
    }
    let mut globals = Vec::new();
    for _ in 0..rng.random_range(0..=3) {
        let span: Vec<usize> = (0..d).filter(|_| rng.random_bool(0.5)).collect();
        globals.push(random_row(&mut rng, &span, 3));
    }
    IlpModel { vars, bricks, globals }
}
