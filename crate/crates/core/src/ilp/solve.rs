use crate::game::{CoalitionStructure, Game, Verdict};
use crate::ilp::bnb::{solve_model_with_stats, IlpOutcome};
use crate::ilp::model::{build_model, GuessContext, IlpModel};
use crate::partition::cover_guesses;
use crate::vc::dp::spread_structure;
use crate::vc::{compute_vertex_cover, VertexCover};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IlpStats {
    pub guesses: u64,
    pub models: u64,
    pub nodes: u64,
}

/// Cover agents keep their guessed coalitions; each independent agent joins
/// the coalition its variable selects.
pub fn assemble(game: &Game, vc: &VertexCover, ctx: &GuessContext, model: &IlpModel, x: &[i64]) -> CoalitionStructure {
    let mut assignment = vec![0; game.n()];
    for (&c, &g) in vc.cover().iter().zip(&ctx.cover_assignment) {
        assignment[c] = g;
    }
    for (var, &val) in model.vars.iter().zip(x) {
        if val == 1 {
            assignment[var.agent] = var.coalition;
        }
    }
    CoalitionStructure::new(game.k(), assignment).expect("labels below k")
}

pub fn ilp_solve_with(game: &Game, vc: &VertexCover) -> (Verdict, IlpStats) {
    let mut stats = IlpStats::default();
    let k = game.k();
    if !game.mode().is_scc() {
        if k > game.n() {
            return (Verdict::No, stats);
        }
        if k > vc.theta() {
            return (Verdict::Yes(spread_structure(game, vc)), stats);
        }
    }
    for guess in cover_guesses(vc.theta(), k, game.mode().is_scc()) {
        stats.guesses += 1;
        let ctx = GuessContext::new(game, vc, &guess).expect("guess matches the cover");
        let model = build_model(game, vc, &ctx).expect("preconditions checked above");
        if model.is_trivially_infeasible() {
            continue;
        }
        stats.models += 1;
        let (outcome, bnb) = solve_model_with_stats(&model);
        stats.nodes += bnb.nodes;
        if let IlpOutcome::Feasible(x) = outcome {
            return (Verdict::Yes(assemble(game, vc, &ctx, &model, &x)), stats);
        }
    }
    (Verdict::No, stats)
}

pub fn ilp_solve(game: &Game) -> Verdict {
    ilp_solve_with(game, &compute_vertex_cover(game)).0
}
