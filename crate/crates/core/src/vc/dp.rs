//! Dynamic program over a vertex cover.
//!
//! For every guess of how the cover agents split across coalitions, the
//! independent agents are placed one at a time in ascending order. A layer
//! keeps the reachable `(sizes, cover utilities)` pairs; an independent agent
//! may join coalition `j` only if its value for the cover agents already
//! there is nonnegative, because it has no other neighbors.

use std::collections::HashSet;

use thiserror::Error;

use crate::game::{Agent, CoalitionStructure, Game, Mode, SizeBound, Verdict};
use crate::partition::cover_guesses;
use crate::vc::cover::VertexCover;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VcDpConfig {
    /// Largest accepted `|w|`; `None` means `n^3`.
    pub weight_cap: Option<u64>,
    /// Answer exactly-k games with more coalitions than cover agents directly.
    pub shortcut: bool,
}

impl Default for VcDpConfig {
    fn default() -> Self {
        VcDpConfig { weight_cap: None, shortcut: true }
    }
}

impl VcDpConfig {
    fn cap(&self, n: usize) -> u64 {
        self.weight_cap.unwrap_or_else(|| (n as u64).saturating_pow(3))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VcDpError {
    #[error("largest weight magnitude {max} exceeds the cap {cap}")]
    WeightCap { max: u64, cap: u64 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VcDpStats {
    pub guesses: u64,
    /// Largest single layer seen across all guesses.
    pub peak_states: usize,
}

/// One target of a placement: a coalition label, or in the compressed
/// regime the shared pool for all coalitions the guess left empty.
struct Slot {
    cover_members: Vec<usize>,
    upper: usize,
}

type Key = (Vec<u32>, Vec<i128>);

struct GuessRun {
    /// Slot chosen for each independent agent, in order.
    placement: Option<Vec<usize>>,
    peak: usize,
}

fn run_guess(
    game: &Game,
    vc: &VertexCover,
    slots: &[Slot],
    accept: &dyn Fn(&[u32]) -> bool,
) -> GuessRun {
    let cover = vc.cover();
    let theta = cover.len();
    let mut slot_of_cover = vec![0; theta];
    for (s, slot) in slots.iter().enumerate() {
        for &l in &slot.cover_members {
            slot_of_cover[l] = s;
        }
    }
    let mut u0 = vec![0i128; theta];
    for (l, u) in u0.iter_mut().enumerate() {
        *u = slots[slot_of_cover[l]].cover_members.iter().map(|&m| game.weight(cover[l], cover[m]) as i128).sum();
    }
    let s0: Vec<u32> = slots.iter().map(|s| s.cover_members.len() as u32).collect();

    let mut layer: Vec<Key> = vec![(s0, u0)];
    let mut back: Vec<Vec<(usize, usize)>> = Vec::with_capacity(vc.independent().len());
    let mut peak = 1;

    for &v in vc.independent() {
        let legal: Vec<bool> = slots
            .iter()
            .map(|slot| game.sum_towards(v, slot.cover_members.iter().map(|&m| cover[m])) >= 0)
            .collect();
        let mut next: Vec<Key> = Vec::new();
        let mut links: Vec<(usize, usize)> = Vec::new();
        let mut seen: HashSet<Key> = HashSet::new();
        for (p, (s, u)) in layer.iter().enumerate() {
            for (j, slot) in slots.iter().enumerate() {
                if !legal[j] || s[j] as usize >= slot.upper {
                    continue;
                }
                let mut s2 = s.clone();
                s2[j] += 1;
                let mut u2 = u.clone();
                for &l in &slot.cover_members {
                    u2[l] += game.weight(cover[l], v) as i128;
                }
                let key = (s2, u2);
                if !seen.insert(key.clone()) {
                    continue;
                }
                next.push(key);
                links.push((p, j));
            }
        }
        peak = peak.max(next.len());
        back.push(links);
        layer = next;
        if layer.is_empty() {
            break;
        }
    }

    let placement = if back.len() == vc.independent().len() {
        layer.iter().position(|(s, u)| u.iter().all(|&x| x >= 0) && accept(s)).map(|mut idx| {
            let mut out = vec![0; back.len()];
            for i in (0..back.len()).rev() {
                let (p, j) = back[i][idx];
                out[i] = j;
                idx = p;
            }
            out
        })
    } else {
        None
    };
    GuessRun { placement, peak }
}

/// Full regime: one slot per coalition label.
fn full_slots(guess: &[usize], k: usize, bounds: Option<&[SizeBound]>) -> Vec<Slot> {
    (0..k)
        .map(|j| Slot {
            cover_members: (0..guess.len()).filter(|&l| guess[l] == j).collect(),
            upper: bounds.map_or(usize::MAX, |b| b[j].upper),
        })
        .collect()
}

/// Compressed regime: one slot per label the guess uses, plus a pool slot.
fn compressed_slots(guess: &[usize], bounds: &[SizeBound]) -> (Vec<usize>, Vec<usize>, Vec<Slot>) {
    let mut used: Vec<usize> = guess.to_vec();
    used.sort_unstable();
    used.dedup();
    let empty: Vec<usize> = (0..bounds.len()).filter(|j| !used.contains(j)).collect();
    let mut slots: Vec<Slot> = used
        .iter()
        .map(|&j| Slot { cover_members: (0..guess.len()).filter(|&l| guess[l] == j).collect(), upper: bounds[j].upper })
        .collect();
    slots.push(Slot { cover_members: Vec::new(), upper: empty.iter().map(|&j| bounds[j].upper).sum() });
    (used, empty, slots)
}

/// Hands pool agents to the empty labels: lower bounds first, then up to
/// the upper bounds, in label order.
fn distribute_pool(pool: &[Agent], empty: &[usize], bounds: &[SizeBound], assignment: &mut [usize]) {
    let mut fill = vec![0usize; empty.len()];
    let mut rest = pool.iter();
    for (e, &j) in empty.iter().enumerate() {
        while fill[e] < bounds[j].lower {
            assignment[*rest.next().expect("pool covers lower bounds")] = j;
            fill[e] += 1;
        }
    }
    for (e, &j) in empty.iter().enumerate() {
        while fill[e] < bounds[j].upper {
            let Some(&a) = rest.next() else { return };
            assignment[a] = j;
            fill[e] += 1;
        }
    }
    assert!(rest.next().is_none(), "pool fits the upper bounds");
}

fn solve_guess(game: &Game, vc: &VertexCover, guess: &[usize], compressed: bool) -> GuessRun {
    let k = game.k();
    match game.mode() {
        Mode::KAshg => {
            let slots = full_slots(guess, k, None);
            run_guess(game, vc, &slots, &|s| s.iter().all(|&x| x >= 1))
        }
        Mode::Scc(bounds) if !compressed => {
            let slots = full_slots(guess, k, Some(bounds));
            run_guess(game, vc, &slots, &|s| s.iter().zip(bounds).all(|(&x, b)| b.contains(x as usize)))
        }
        Mode::Scc(bounds) => {
            let (used, empty, slots) = compressed_slots(guess, bounds);
            let lower_pool: usize = empty.iter().map(|&j| bounds[j].lower).sum();
            let upper_pool: usize = empty.iter().map(|&j| bounds[j].upper).sum();
            let accept = |s: &[u32]| {
                let pool = s[used.len()] as usize;
                used.iter().zip(s).all(|(&j, &x)| bounds[j].contains(x as usize))
                    && lower_pool <= pool
                    && pool <= upper_pool
            };
            run_guess(game, vc, &slots, &accept)
        }
    }
}

fn assemble(game: &Game, vc: &VertexCover, guess: &[usize], compressed: bool, placement: &[usize]) -> CoalitionStructure {
    let mut assignment = vec![0; game.n()];
    for (l, &c) in vc.cover().iter().enumerate() {
        assignment[c] = guess[l];
    }
    match (game.mode(), compressed) {
        (Mode::Scc(bounds), true) => {
            let (used, empty, _) = compressed_slots(guess, bounds);
            let mut pool = Vec::new();
            for (&v, &slot) in vc.independent().iter().zip(placement) {
                if slot < used.len() {
                    assignment[v] = used[slot];
                } else {
                    pool.push(v);
                }
            }
            distribute_pool(&pool, &empty, bounds, &mut assignment);
        }
        _ => {
            for (&v, &slot) in vc.independent().iter().zip(placement) {
                assignment[v] = slot;
            }
        }
    }
    CoalitionStructure::new(game.k(), assignment).expect("labels below k")
}

/// Cover agents alone, independent agents spread over the remaining
/// `k - theta` coalitions. Everybody has utility zero.
pub(crate) fn spread_structure(game: &Game, vc: &VertexCover) -> CoalitionStructure {
    let theta = vc.theta();
    let spare = game.k() - theta;
    let mut assignment = vec![0; game.n()];
    for (l, &c) in vc.cover().iter().enumerate() {
        assignment[c] = l;
    }
    for (t, &v) in vc.independent().iter().enumerate() {
        assignment[v] = theta + t.min(spare - 1);
    }
    CoalitionStructure::new(game.k(), assignment).expect("labels below k")
}

pub fn vc_dp_solve_with(game: &Game, vc: &VertexCover, config: &VcDpConfig) -> Result<(Verdict, VcDpStats), VcDpError> {
    let cap = config.cap(game.n());
    let max = game.max_abs_weight();
    if max > cap {
        return Err(VcDpError::WeightCap { max, cap });
    }
    let mut stats = VcDpStats::default();
    let k = game.k();
    let theta = vc.theta();
    if !game.mode().is_scc() {
        if k > game.n() {
            return Ok((Verdict::No, stats));
        }
        if config.shortcut && k > theta {
            return Ok((Verdict::Yes(spread_structure(game, vc)), stats));
        }
    }
    let compressed = game.mode().is_scc() && k > theta;
    for guess in cover_guesses(theta, k, game.mode().is_scc()) {
        stats.guesses += 1;
        let run = solve_guess(game, vc, &guess, compressed);
        stats.peak_states = stats.peak_states.max(run.peak);
        if let Some(placement) = run.placement {
            return Ok((Verdict::Yes(assemble(game, vc, &guess, compressed, &placement)), stats));
        }
    }
    Ok((Verdict::No, stats))
}

pub fn vc_dp_solve(game: &Game, vc: &VertexCover) -> Result<Verdict, VcDpError> {
    vc_dp_solve_with(game, vc, &VcDpConfig::default()).map(|(v, _)| v)
}

/// Largest DP layer over every cover guess, without shortcuts or early exit.
pub fn dp_state_count(game: &Game, vc: &VertexCover) -> usize {
    let compressed = game.mode().is_scc() && game.k() > vc.theta();
    cover_guesses(vc.theta(), game.k(), game.mode().is_scc())
        .map(|guess| solve_guess(game, vc, &guess, compressed).peak)
        .max()
        .unwrap_or(0)
}
