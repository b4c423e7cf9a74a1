//! One entry point over every solver, plus the `auto` strategy that picks
//! the cheapest applicable one.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{solve_k_equals_1, Game, Verdict};
use crate::ilp::ilp_solve_with;
use crate::oracle::{oracle_solve_with_stats, OracleConfig, OracleError};
use crate::tw::{coloring_shortcut_with, decompose, tw_solve_with, ShortcutOutcome, TreeDecomposition, TwError};
use crate::graph::Graph;
use crate::vc::{compute_vertex_cover, vc_dp_solve_with, vertex_cover_within, VcDpConfig, VcDpError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algo {
    Oracle,
    VcDp,
    Ilp,
    TwDp,
    Auto,
}

impl Algo {
    pub const ALL: [Algo; 5] = [Algo::Oracle, Algo::VcDp, Algo::Ilp, Algo::TwDp, Algo::Auto];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Oracle => "oracle",
            Algo::VcDp => "vc-dp",
            Algo::Ilp => "ilp",
            Algo::TwDp => "tw-dp",
            Algo::Auto => "auto",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown algorithm `{0}`, expected oracle, vc-dp, ilp, tw-dp or auto")]
pub struct UnknownAlgo(pub String);

impl FromStr for Algo {
    type Err = UnknownAlgo;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algo::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| UnknownAlgo(s.to_string()))
    }
}

/// Thresholds for `auto`; explicit algorithms only use `oracle` and `vc_dp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    pub oracle: OracleConfig,
    pub vc_dp: VcDpConfig,
    /// Largest cover size `auto` hands to the vertex cover DP.
    pub auto_vc_theta: usize,
    /// Largest cover size `auto` hands to the ILP.
    pub auto_ilp_theta: usize,
    /// Largest width `auto` hands to the treewidth DP.
    pub auto_tw_width: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            oracle: OracleConfig::default(),
            vc_dp: VcDpConfig::default(),
            auto_vc_theta: 8,
            auto_ilp_theta: 10,
            auto_tw_width: 8,
        }
    }
}

/// Which routine produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SingleCoalition,
    ColoringShortcut,
    Oracle,
    VcDp,
    Ilp,
    TwDp,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::SingleCoalition => "k1",
            Method::ColoringShortcut => "coloring",
            Method::Oracle => "oracle",
            Method::VcDp => "vc-dp",
            Method::Ilp => "ilp",
            Method::TwDp => "tw-dp",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub method: Method,
    /// Partitions for the oracle, peak DP states for the DPs, B&B nodes for
    /// the ILP, zero for the closed-form paths.
    pub work: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("oracle refused")]
    Oracle(#[from] OracleError),
    #[error("vertex cover DP refused")]
    VcDp(#[from] VcDpError),
    #[error("treewidth DP refused")]
    Tw(#[from] TwError),
    #[error("no algorithm applies within the configured limits")]
    NoApplicableAlgorithm,
}

/// Runs `algo`; `td` is only consulted by the treewidth paths.
pub fn solve(game: &Game, algo: Algo, td: Option<&TreeDecomposition>, config: &SolveConfig) -> Result<SolveReport, SolveError> {
    match algo {
        Algo::Oracle => {
            let (verdict, stats) = oracle_solve_with_stats(game, &config.oracle)?;
            Ok(SolveReport { verdict, method: Method::Oracle, work: stats.partitions })
        }
        Algo::VcDp => {
            let vc = compute_vertex_cover(game);
            let (verdict, stats) = vc_dp_solve_with(game, &vc, &config.vc_dp)?;
            Ok(SolveReport { verdict, method: Method::VcDp, work: stats.peak_states as u64 })
        }
        Algo::Ilp => {
            let (verdict, stats) = ilp_solve_with(game, &compute_vertex_cover(game));
            Ok(SolveReport { verdict, method: Method::Ilp, work: stats.nodes })
        }
        Algo::TwDp => {
            let (verdict, stats) = tw_solve_with(game, td)?;
            let method = if stats.used_shortcut { Method::ColoringShortcut } else { Method::TwDp };
            Ok(SolveReport { verdict, method, work: stats.peak_states as u64 })
        }
        Algo::Auto => solve_auto(game, td, config),
    }
}

/// Single coalition, coloring shortcut, vertex cover DP for small covers,
/// treewidth DP for binary weights, ILP for moderate covers, oracle for few
/// agents, in that order.
fn solve_auto(game: &Game, td: Option<&TreeDecomposition>, config: &SolveConfig) -> Result<SolveReport, SolveError> {
    if game.k() == 1 {
        let verdict = solve_k_equals_1(game).expect("k is 1");
        return Ok(SolveReport { verdict, method: Method::SingleCoalition, work: 0 });
    }
    let binary = game.is_binary();
    let computed;
    let td = match (binary, td) {
        (false, _) => None,
        (true, Some(td)) => Some(td),
        (true, None) => {
            computed = decompose(&Graph::underlying(game));
            Some(&computed)
        }
    };
    if let Some(td) = td {
        if !game.mode().is_scc() && game.k() <= game.n() && game.k() > td.width() {
            if let ShortcutOutcome::Yes(s) = coloring_shortcut_with(game, td)? {
                return Ok(SolveReport { verdict: Verdict::Yes(s), method: Method::ColoringShortcut, work: 0 });
            }
        }
    }
    let small_cover = vertex_cover_within(game, config.auto_vc_theta.max(config.auto_ilp_theta));
    if let Some(vc) = small_cover.as_ref().filter(|vc| vc.theta() <= config.auto_vc_theta) {
        match vc_dp_solve_with(game, vc, &config.vc_dp) {
            Ok((verdict, stats)) => return Ok(SolveReport { verdict, method: Method::VcDp, work: stats.peak_states as u64 }),
            Err(VcDpError::WeightCap { .. }) => {}
        }
    }
    if let Some(td) = td.filter(|td| td.width() <= config.auto_tw_width) {
        let (verdict, stats) = tw_solve_with(game, Some(td))?;
        return Ok(SolveReport { verdict, method: Method::TwDp, work: stats.peak_states as u64 });
    }
    if let Some(vc) = small_cover {
        let (verdict, stats) = ilp_solve_with(game, &vc);
        return Ok(SolveReport { verdict, method: Method::Ilp, work: stats.nodes });
    }
    match oracle_solve_with_stats(game, &config.oracle) {
        Ok((verdict, stats)) => Ok(SolveReport { verdict, method: Method::Oracle, work: stats.partitions }),
        Err(OracleError::TooLarge { .. }) => Err(SolveError::NoApplicableAlgorithm),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{check_certificate, Mode};

    #[test]
    fn names_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.name().parse::<Algo>().unwrap(), a);
        }
        assert!("simplex".parse::<Algo>().is_err());
    }

    #[test]
    fn auto_picks_cheap_paths() {
        let cfg = SolveConfig::default();
        let hostile = Game::symmetric(2, 1, Mode::KAshg, [(0, 1, -1)]).unwrap();
        let r = solve(&hostile, Algo::Auto, None, &cfg).unwrap();
        assert_eq!((r.verdict.is_yes(), r.method), (false, Method::SingleCoalition));
        let path = Game::symmetric(3, 2, Mode::KAshg, [(0, 1, -1), (1, 2, 1)]).unwrap();
        let r = solve(&path, Algo::Auto, None, &cfg).unwrap();
        assert_eq!(r.method, Method::ColoringShortcut);
        assert!(check_certificate(&path, r.verdict.structure().unwrap()).is_valid());
        let weighted = Game::symmetric(3, 2, Mode::KAshg, [(0, 1, -2), (1, 2, 3)]).unwrap();
        assert_eq!(solve(&weighted, Algo::Auto, None, &cfg).unwrap().method, Method::VcDp);
    }

    #[test]
    fn explicit_refusals() {
        let cfg = SolveConfig::default();
        let weighted = Game::symmetric(3, 2, Mode::KAshg, [(0, 1, -2)]).unwrap();
        assert_eq!(solve(&weighted, Algo::TwDp, None, &cfg), Err(SolveError::Tw(TwError::NonBinary)));
        let big = Game::new(13, 2, Mode::KAshg, []).unwrap();
        assert!(matches!(solve(&big, Algo::Oracle, None, &cfg), Err(SolveError::Oracle(_))));
        assert!(solve(&big, Algo::Auto, None, &cfg).unwrap().verdict.is_yes());
    }
}
