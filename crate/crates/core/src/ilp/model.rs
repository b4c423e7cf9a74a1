//! Integer program for one guess of the cover agents' coalitions.
//!
//! Variables `x[v, i]` say independent agent `v` joins coalition `i`; they
//! exist only for coalitions `v` tolerates. Each agent gets one local row
//! (it joins exactly one coalition). Global rows keep every cover agent
//! individually rational and every coalition within its size constraint.
//!
//! Inequalities stay as sensed rows; adding one slack variable per global
//! row turns the model into the all-equality block form.

use std::fmt::Write as _;

use thiserror::Error;

use crate::game::{Agent, Game, Mode};
use crate::vc::VertexCover;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Le,
    Eq,
    Range,
}

/// `lower <= Σ coef · x[var] <= upper`, either side optional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub terms: Vec<(usize, i64)>,
    pub lower: Option<i64>,
    pub upper: Option<i64>,
}

impl Row {
    pub fn ge(terms: Vec<(usize, i64)>, rhs: i64) -> Self {
        Row { terms, lower: Some(rhs), upper: None }
    }

    pub fn le(terms: Vec<(usize, i64)>, rhs: i64) -> Self {
        Row { terms, lower: None, upper: Some(rhs) }
    }

    pub fn eq(terms: Vec<(usize, i64)>, rhs: i64) -> Self {
        Row { terms, lower: Some(rhs), upper: Some(rhs) }
    }

    pub fn range(terms: Vec<(usize, i64)>, lower: i64, upper: i64) -> Self {
        Row { terms, lower: Some(lower), upper: Some(upper) }
    }

    pub fn sense(&self) -> Sense {
        match (self.lower, self.upper) {
            (Some(l), Some(u)) if l == u => Sense::Eq,
            (Some(_), Some(_)) => Sense::Range,
            (Some(_), None) => Sense::Ge,
            _ => Sense::Le,
        }
    }

    pub fn activity(&self, x: &[i64]) -> i128 {
        self.terms.iter().map(|&(v, c)| c as i128 * x[v] as i128).sum()
    }

    pub fn is_satisfied(&self, x: &[i64]) -> bool {
        let a = self.activity(x);
        self.lower.is_none_or(|l| a >= l as i128) && self.upper.is_none_or(|u| a <= u as i128)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Variable {
    pub agent: Agent,
    pub coalition: usize,
    pub lower: i64,
    pub upper: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IlpModel {
    pub vars: Vec<Variable>,
    /// One local row per independent agent.
    pub bricks: Vec<Row>,
    /// Cover-agent rows first, then one row per coalition.
    pub globals: Vec<Row>,
}

impl IlpModel {
    pub fn rows(&self) -> impl Iterator<Item = &Row> {
        self.bricks.iter().chain(&self.globals)
    }

    /// Some independent agent tolerates no coalition at all.
    pub fn is_trivially_infeasible(&self) -> bool {
        self.bricks.iter().any(|r| r.terms.is_empty() && !r.is_satisfied(&[]))
    }

    pub fn is_satisfied(&self, x: &[i64]) -> bool {
        x.len() == self.vars.len()
            && self.vars.iter().zip(x).all(|(v, &val)| v.lower <= val && val <= v.upper)
            && self.rows().all(|r| r.is_satisfied(x))
    }

    /// Text rendering, one line per variable and row:
    ///
    /// ```text
    /// var x0 agent 3 coalition 1 in [0, 1]
    /// local 1 x0 + 1 x1 = 1
    /// global -2 x0 + 1 x1 >= -1
    /// global 1 x0 in [0, 2]
    /// ```
    ///
    /// Agents and coalitions are 1-based, as in the instance format.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.vars.iter().enumerate() {
            let _ = writeln!(out, "var x{i} agent {} coalition {} in [{}, {}]", v.agent + 1, v.coalition + 1, v.lower, v.upper);
        }
        for r in &self.bricks {
            let _ = writeln!(out, "local {}", render_row(r));
        }
        for r in &self.globals {
            let _ = writeln!(out, "global {}", render_row(r));
        }
        out
    }
}

fn render_row(row: &Row) -> String {
    let lhs = if row.terms.is_empty() {
        "0".to_string()
    } else {
        row.terms.iter().map(|(v, c)| format!("{c} x{v}")).collect::<Vec<_>>().join(" + ")
    };
    match (row.sense(), row.lower, row.upper) {
        (Sense::Eq, Some(l), _) => format!("{lhs} = {l}"),
        (Sense::Range, Some(l), Some(u)) => format!("{lhs} in [{l}, {u}]"),
        (Sense::Ge, Some(l), _) => format!("{lhs} >= {l}"),
        (_, _, Some(u)) => format!("{lhs} <= {u}"),
        _ => lhs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("exactly-k model needs k <= cover size, got k = {k} with {theta} cover agents")]
    TooManyCoalitions { k: usize, theta: usize },
    #[error("guess assigns {got} cover agents, the cover has {expected}")]
    GuessLength { expected: usize, got: usize },
    #[error("guess uses coalition {coalition}, but k = {k}")]
    GuessLabel { coalition: usize, k: usize },
}

/// A guess of the cover agents' coalitions and, for each independent agent,
/// the coalitions it tolerates: those whose guessed cover agents it values
/// at zero or more in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessContext {
    /// Coalition of each cover agent, in cover order.
    pub cover_assignment: Vec<usize>,
    /// Tolerated coalitions for each independent agent, in cover order.
    pub legal: Vec<Vec<usize>>,
}

impl GuessContext {
    pub fn new(game: &Game, vc: &VertexCover, guess: &[usize]) -> Result<Self, ModelError> {
        if guess.len() != vc.theta() {
            return Err(ModelError::GuessLength { expected: vc.theta(), got: guess.len() });
        }
        if let Some(&coalition) = guess.iter().find(|&&c| c >= game.k()) {
            return Err(ModelError::GuessLabel { coalition, k: game.k() });
        }
        let legal = vc
            .independent()
            .iter()
            .map(|&v| {
                (0..game.k())
                    .filter(|&i| {
                        let members = vc.cover().iter().zip(guess).filter(|&(_, &g)| g == i).map(|(&c, _)| c);
                        game.sum_towards(v, members) >= 0
                    })
                    .collect()
            })
            .collect();
        Ok(GuessContext { cover_assignment: guess.to_vec(), legal })
    }
}

pub fn build_model(game: &Game, vc: &VertexCover, ctx: &GuessContext) -> Result<IlpModel, ModelError> {
    let k = game.k();
    let theta = vc.theta();
    if !game.mode().is_scc() && k > theta {
        return Err(ModelError::TooManyCoalitions { k, theta });
    }
    let cover = vc.cover();
    let mut model = IlpModel::default();
    let mut var_of = vec![vec![None; k]; game.n()];
    for (&v, legal) in vc.independent().iter().zip(&ctx.legal) {
        let mut terms = Vec::new();
        for &i in legal {
            var_of[v][i] = Some(model.vars.len());
            terms.push((model.vars.len(), 1));
            model.vars.push(Variable { agent: v, coalition: i, lower: 0, upper: 1 });
        }
        model.bricks.push(Row::eq(terms, 1));
    }

    let mut cover_sizes = vec![0i64; k];
    for &c in &ctx.cover_assignment {
        cover_sizes[c] += 1;
    }
    for (l, &u) in cover.iter().enumerate() {
        let i = ctx.cover_assignment[l];
        let base: i128 = cover.iter().zip(&ctx.cover_assignment).filter(|&(_, &g)| g == i).map(|(&c, _)| game.weight(u, c) as i128).sum();
        let terms = game
            .out_arcs(u)
            .iter()
            .filter_map(|&(v, w)| var_of[v][i].map(|x| (x, w)))
            .collect();
        model.globals.push(Row::ge(terms, i64::try_from(-base).unwrap_or(i64::MAX)));
    }
    for (i, &size) in cover_sizes.iter().enumerate() {
        let terms: Vec<(usize, i64)> =
            model.vars.iter().enumerate().filter(|(_, v)| v.coalition == i).map(|(x, _)| (x, 1)).collect();
        let row = match game.mode() {
            Mode::KAshg => Row::ge(terms, 1 - size),
            Mode::Scc(bounds) => Row::range(terms, bounds[i].lower as i64 - size, bounds[i].upper as i64 - size),
        };
        model.globals.push(row);
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::SizeBound;

    #[test]
    fn cover_row_forces_both_friends() {
        // cover agents 0 and 1 share a coalition; 0 dislikes 1 at -2 and likes
        // independent agents 2 and 3 at +1
        let g = Game::new(4, 1, Mode::KAshg, [(0, 1, -2), (0, 2, 1), (0, 3, 1), (1, 0, 1)]).unwrap();
        let vc = VertexCover::new(&g, [0, 1]).unwrap();
        let ctx = GuessContext::new(&g, &vc, &[0, 0]).unwrap();
        let m = build_model(&g, &vc, &ctx).unwrap();
        assert_eq!(m.vars.len(), 2);
        assert_eq!(m.globals[0], Row::ge(vec![(0, 1), (1, 1)], 2));
        assert_eq!(m.globals.len(), vc.theta() + g.k());
        assert!(m.is_satisfied(&[1, 1]));
        assert!(!m.is_satisfied(&[1, 0]));
    }

    #[test]
    fn isolated_agent_tolerates_everything() {
        let g = Game::symmetric(3, 2, Mode::KAshg, [(0, 1, -1)]).unwrap();
        let vc = VertexCover::new(&g, [0, 1]).unwrap();
        let ctx = GuessContext::new(&g, &vc, &[0, 1]).unwrap();
        assert_eq!(ctx.legal, vec![vec![0, 1]]);
    }

    #[test]
    fn empty_coalition_without_candidates() {
        // agent 2 hates 0; coalition 1 is empty in the guess and only 2 could fill it
        let g = Game::new(3, 2, Mode::KAshg, [(2, 0, -1), (0, 1, 1), (1, 0, 1)]).unwrap();
        let vc = VertexCover::new(&g, [0, 1]).unwrap();
        let ctx = GuessContext::new(&g, &vc, &[0, 0]).unwrap();
        let m = build_model(&g, &vc, &ctx).unwrap();
        assert_eq!(m.globals.last().unwrap(), &Row::ge(vec![(0, 1)], 1));
        let hated = Game::new(3, 1, Mode::KAshg, [(2, 0, -1), (0, 1, 1), (1, 0, 1)]).unwrap();
        let ctx = GuessContext::new(&hated, &vc, &[0, 0]).unwrap();
        assert!(build_model(&hated, &vc, &ctx).unwrap().is_trivially_infeasible());
    }

    #[test]
    fn size_rows_for_bounded_coalitions() {
        let bounds = vec![SizeBound::new(1, 3), SizeBound::new(0, 2)];
        let g = Game::symmetric(4, 2, Mode::Scc(bounds), [(0, 1, 1), (0, 2, 1)]).unwrap();
        let vc = VertexCover::new(&g, [0]).unwrap();
        let ctx = GuessContext::new(&g, &vc, &[1]).unwrap();
        let m = build_model(&g, &vc, &ctx).unwrap();
        assert_eq!(m.globals[1].lower, Some(1));
        assert_eq!(m.globals[2].sense(), Sense::Range);
        assert_eq!(m.globals[2].upper, Some(1));
        assert!(m.dump().lines().any(|l| l.starts_with("global ")));
    }

    #[test]
    fn precondition_errors() {
        let g = Game::new(3, 2, Mode::KAshg, [(0, 1, 1)]).unwrap();
        let vc = VertexCover::new(&g, [0]).unwrap();
        let ctx = GuessContext::new(&g, &vc, &[0]).unwrap();
        assert_eq!(build_model(&g, &vc, &ctx), Err(ModelError::TooManyCoalitions { k: 2, theta: 1 }));
        assert!(matches!(GuessContext::new(&g, &vc, &[0, 1]), Err(ModelError::GuessLength { .. })));
        assert!(matches!(GuessContext::new(&g, &vc, &[5]), Err(ModelError::GuessLabel { .. })));
    }
}
