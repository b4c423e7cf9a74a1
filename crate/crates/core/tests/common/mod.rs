#![allow(dead_code)]

use hedonic_ir::ilp::IlpModel;
use hedonic_ir::random::{random_game, rng, RandomParams};
use hedonic_ir::{CoalitionStructure, Game};
use rand::Rng;

/// Exactly-k games: n in 1..=10, k in 1..=4, weights in [-3, 3]; every third
/// one is binary so the treewidth DP has something to chew on.
pub fn kashg_corpus(count: u64) -> Vec<Game> {
    (0..count).map(|i| corpus_game(i, 10, false)).collect()
}

/// Size-constrained games with n in 1..=8.
pub fn scc_corpus(count: u64) -> Vec<Game> {
    (0..count).map(|i| corpus_game(10_000 + i, 8, true)).collect()
}

fn corpus_game(seed: u64, max_n: usize, scc: bool) -> Game {
    let mut r = rng(seed ^ 0x5eed);
    let n = r.random_range(1..=max_n);
    let k = r.random_range(1..=4);
    let w = if seed % 3 == 0 { 1 } else { 3 };
    let params = RandomParams {
        n,
        k,
        density: r.random_range(0.15..0.75),
        wmin: -w,
        wmax: w,
        symmetric: r.random_bool(0.5),
        scc,
    };
    random_game(&params, seed).expect("valid parameters")
}

/// Uniform labelling of `n` agents with `k` labels; empty labels allowed.
pub fn random_structure<R: Rng>(r: &mut R, n: usize, k: usize) -> CoalitionStructure {
    CoalitionStructure::new(k, (0..n).map(|_| r.random_range(0..k)).collect()).unwrap()
}

/// Feasibility by walking every point of the variable box.
pub fn enumerate_model(model: &IlpModel) -> bool {
    let mut x: Vec<i64> = model.vars.iter().map(|v| v.lower).collect();
    if model.vars.iter().any(|v| v.lower > v.upper) {
        return false;
    }
    loop {
        if model.is_satisfied(&x) {
            return true;
        }
        let Some(p) = (0..x.len()).find(|&p| x[p] < model.vars[p].upper) else { return false };
        x[p] += 1;
        for q in 0..p {
            x[q] = model.vars[q].lower;
        }
    }
}

/// `perm[i]` is the new name of agent `i`.
pub fn random_permutation<R: Rng>(r: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, r.random_range(0..=i));
    }
    p
}

/// Full 2^d walk over a binary model in Gray-code order, keeping row
/// activities up to date with one flip per step.
pub fn enumerate_binary_model(model: &IlpModel) -> bool {
    assert!(model.vars.iter().all(|v| v.lower == 0 && v.upper == 1), "binary variables only");
    let rows: Vec<_> = model.rows().collect();
    let d = model.vars.len();
    let mut touches: Vec<Vec<(usize, i128)>> = vec![Vec::new(); d];
    for (r, row) in rows.iter().enumerate() {
        for &(v, c) in &row.terms {
            touches[v].push((r, c as i128));
        }
    }
    let ok = |row: &hedonic_ir::ilp::Row, a: i128| {
        row.lower.is_none_or(|l| a >= l as i128) && row.upper.is_none_or(|u| a <= u as i128)
    };
    let mut activity = vec![0i128; rows.len()];
    let mut violated = rows.iter().zip(&activity).filter(|(row, &a)| !ok(row, a)).count();
    let mut x = vec![false; d];
    for step in 1u64..=1 << d {
        if violated == 0 {
            return true;
        }
        if step == 1 << d {
            break;
        }
        let v = step.trailing_zeros() as usize;
        x[v] = !x[v];
        let sign = if x[v] { 1 } else { -1 };
        for &(r, c) in &touches[v] {
            let before = ok(rows[r], activity[r]);
            activity[r] += sign * c;
            let after = ok(rows[r], activity[r]);
            violated = violated + (before && !after) as usize - (!before && after) as usize;
        }
    }
    false
}
