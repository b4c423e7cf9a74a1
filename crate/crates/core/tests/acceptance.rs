//! One line per acceptance check. Checks listed in `KNOWN_FAILURES` report
//! FAIL without failing the run; anything else failing exits nonzero.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use hedonic_ir::bench::{run_bench, write_csv, CorpusEntry};
use hedonic_ir::dispatch::{solve, Algo, SolveConfig};
use hedonic_ir::graph::Graph;
use hedonic_ir::ilp::{ilp_solve, ilp_solve_with, solve_model};
use hedonic_ir::io::{parse_instance, render_instance, render_solution};
use hedonic_ir::oracle::{oracle_solve, OracleConfig};
use hedonic_ir::random::{random_game, random_ilp_model, rng, RandomParams};
use hedonic_ir::reductions::*;
use hedonic_ir::tw::{coloring_shortcut, compute_tree_decomposition, tw_solve, ShortcutOutcome};
use hedonic_ir::vc::{compute_vertex_cover, vc_dp_solve};
use hedonic_ir::{check_certificate, ir_equivalence_witness, Game, Mode, Verdict};
use rand::Rng;
use rayon::prelude::*;

use common::{enumerate_binary_model, kashg_corpus, random_structure, scc_corpus};

/// The ILP walks 2^(theta-1) cover guesses on No instances, so it only runs
/// on the smaller general factors games.
const GF_ILP_THETA: usize = 18;

/// Checks whose failure is analysed in the decisions ledger.
const KNOWN_FAILURES: [&str; 3] = ["3c clique", "3d bin packing k-ashg", "7a equitable negative edges"];

struct Report {
    unexpected: usize,
}

impl Report {
    fn line(&mut self, id: &str, pass: bool, detail: String) {
        println!("{} {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass && !KNOWN_FAILURES.contains(&id) {
            self.unexpected += 1;
        }
    }
}

fn oracle(game: &Game) -> Verdict {
    oracle_solve(game, &OracleConfig::default()).expect("within oracle limits")
}

fn certified(game: &Game, v: &Verdict) -> bool {
    v.structure().is_none_or(|s| check_certificate(game, s).is_valid())
}

fn vc_dp(game: &Game) -> Verdict {
    vc_dp_solve(game, &compute_vertex_cover(game)).expect("weights within cap")
}

/// (disagreements, bad certificates) for one game.
fn cross_check(game: &Game) -> (usize, usize) {
    let expected = oracle(game).is_yes();
    let mut verdicts = vec![vc_dp(game), ilp_solve(game)];
    if game.is_binary() && !game.mode().is_scc() {
        verdicts.push(tw_solve(game).expect("binary"));
    }
    let wrong = verdicts.iter().filter(|v| v.is_yes() != expected).count();
    let bad = verdicts.iter().filter(|v| !certified(game, v)).count();
    (wrong, bad)
}

fn criterion_1(r: &mut Report, kashg: &[Game], scc: &[Game]) {
    for (id, corpus) in [("1a oracle equivalence k-ashg", kashg), ("1b oracle equivalence scc", scc)] {
        let (wrong, bad) = corpus.par_iter().map(cross_check).reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        let binary = corpus.iter().filter(|g| g.is_binary() && !g.mode().is_scc()).count();
        let tw = if binary > 0 { format!(", {binary} also through tw-dp") } else { String::new() };
        r.line(
            id,
            wrong == 0 && bad == 0,
            format!("{} instances{tw}, {wrong} disagreements, {bad} invalid certificates", corpus.len()),
        );
    }
}

fn criterion_2(r: &mut Report, games: &[Game]) {
    let per_game = 70;
    let (checks, split) = games
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut rr = rng(900_000 + i as u64);
            let mut split = 0;
            for _ in 0..per_game {
                let (a, f, m) = ir_equivalence_witness(g, &random_structure(&mut rr, g.n(), g.k())).unwrap();
                split += !(a == f && f == m) as usize;
            }
            (per_game, split)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    r.line("2 semantics equivalence", checks >= 100_000 && split == 0, format!("{checks} structures, {split} disagreements"));
}

fn multisets(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s: Vec<u64>| {
                let lo = s.last().copied().unwrap_or(1);
                (lo..=max).map(move |v| [s.clone(), vec![v]].concat())
            })
            .collect();
    }
    out
}

fn all_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            out.push(Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)));
        }
    }
    out
}

fn criterion_3(r: &mut Report) {
    let mut total = 0;
    let mut agree = 0;
    for len in [4, 6] {
        for values in multisets(len, 4) {
            let Ok(inst) = EquitablePartitionInstance::new(values) else { continue };
            if inst.check_promise().is_err() {
                continue;
            }
            let expected = source_oracle_equitable(&inst).unwrap();
            for scc in [false, true] {
                let game = gen_equitable_partition(&inst, EquitableOptions { scc, ..Default::default() }).unwrap();
                total += 1;
                agree += (oracle(&game).is_yes() == expected && vc_dp(&game).is_yes() == expected) as usize;
            }
        }
    }
    r.line("3a equitable partition", total > 0 && agree == total, format!("{agree}/{total} games agree"));

    let mut total = 0;
    let mut agree = 0;
    let mut sound = 0;
    let mut skipped = 0;
    for graph in all_graphs(5) {
        for t in [2, 3] {
            let Ok(inst) = CliqueInstance::new(graph.clone(), t) else {
                skipped += 1;
                continue;
            };
            let game = gen_clique(&inst).unwrap();
            let got = oracle(&game);
            let dp = vc_dp(&game);
            let expected = source_oracle_clique(&inst).unwrap();
            total += 1;
            agree += (got.is_yes() == expected && dp.is_yes() == expected) as usize;
            sound += (got.is_yes() || !expected) as usize;
        }
    }
    r.line("3b clique completeness", sound == total, format!("{sound}/{total} clique instances keep a Yes"));
    r.line(
        "3c clique",
        agree == total,
        format!("{agree}/{total} agree ({:.1}%), {skipped} pairs with t >= vertices skipped", 100.0 * agree as f64 / total as f64),
    );

    let mut total = 0;
    let (mut plain_ok, mut corrected_ok) = (0, 0);
    for mu in [2, 4, 6] {
        for values in multisets(mu, 4) {
            let sum: u64 = values.iter().sum();
            if sum % 2 == 1 {
                continue;
            }
            let inst = BinPackingInstance::new(values, 2, sum / 2).unwrap();
            let balanced = source_oracle_bin_packing(&inst, true).unwrap();
            let plain = gen_bin_packing(&inst, BinPackingVariant::KAshg).unwrap();
            let corrected = gen_bin_packing(&inst, BinPackingVariant::SccCorrected).unwrap();
            total += 1;
            plain_ok += (oracle(&plain).is_yes() == balanced && vc_dp(&plain).is_yes() == balanced) as usize;
            corrected_ok += (oracle(&corrected).is_yes() == balanced && vc_dp(&corrected).is_yes() == balanced) as usize;
        }
    }
    r.line("3d bin packing k-ashg", plain_ok == total, format!("{plain_ok}/{total} agree with the balanced source"));
    r.line("3e bin packing scc", corrected_ok == total, format!("{corrected_ok}/{total} agree with the balanced source"));

    let start = Instant::now();
    let (mut total, mut agree, mut ilp_total, mut ilp_agree) = (0, 0, 0, 0);
    for n in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            if mask.count_ones() > 2 {
                continue;
            }
            let graph = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
            let delta = (0..n).map(|v| graph.degree(v)).max().unwrap();
            let choices: Vec<BTreeSet<usize>> =
                (0u32..1 << (delta + 1)).map(|m| (0..=delta).filter(|&v| m >> v & 1 == 1).collect()).collect();
            let combos = choices.len().pow(n as u32);
            let results: Vec<(bool, Option<bool>)> = (0..combos)
                .into_par_iter()
                .map(|mut c| {
                    let lists = (0..n)
                        .map(|_| {
                            let l = choices[c % choices.len()].clone();
                            c /= choices.len();
                            l
                        })
                        .collect();
                    let inst = GeneralFactorsInstance::new(graph.clone(), lists).unwrap();
                    let expected = source_oracle_general_factors(&inst).unwrap();
                    let game = gen_general_factors(&inst).unwrap();
                    let tw = tw_solve(&game).unwrap();
                    let vc = compute_vertex_cover(&game);
                    let ilp = (vc.theta() <= GF_ILP_THETA).then(|| {
                        let v = ilp_solve_with(&game, &vc).0;
                        v.is_yes() == expected && certified(&game, &v)
                    });
                    (tw.is_yes() == expected && certified(&game, &tw), ilp)
                })
                .collect();
            total += results.len();
            agree += results.iter().filter(|r| r.0).count();
            ilp_total += results.iter().filter(|r| r.1.is_some()).count();
            ilp_agree += results.iter().filter(|r| r.1 == Some(true)).count();
        }
    }
    r.line(
        "3f general factors",
        agree == total && ilp_agree == ilp_total,
        format!(
            "tw-dp agrees on {agree}/{total}, ilp on {ilp_agree}/{ilp_total} with cover number <= {GF_ILP_THETA}, {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    );
}

fn criterion_4(r: &mut Report) {
    let rows: Vec<(bool, bool)> = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mut rr = rng(400_000 + i);
            loop {
                let n = rr.random_range(2..=10);
                let params = RandomParams {
                    n,
                    density: rr.random_range(0.05..0.4),
                    symmetric: rr.random_bool(0.5),
                    ..RandomParams::default()
                };
                let game = random_game(&params, rr.random()).unwrap();
                let theta = compute_vertex_cover(&game).theta();
                if theta >= n {
                    continue;
                }
                let game = game.with_k(rr.random_range(theta + 1..=n), Mode::KAshg).unwrap();
                let v = vc_dp(&game);
                let yes = v.is_yes() && certified(&game, &v);
                return (yes, oracle(&game).is_yes());
            }
        })
        .collect();
    let yes = rows.iter().filter(|r| r.0).count();
    let oracle_yes = rows.iter().filter(|r| r.1).count();
    r.line(
        "4a k above cover number",
        yes == rows.len() && oracle_yes == rows.len(),
        format!("{yes}/{} certified Yes, oracle agrees on {oracle_yes}", rows.len()),
    );

    let inst = EquitablePartitionInstance::new(vec![1, 1, 1, 1]).unwrap();
    let game = gen_equitable_partition(&inst, EquitableOptions::default()).unwrap();
    let theta = compute_vertex_cover(&game).theta();
    let report = solve(&game, Algo::VcDp, None, &SolveConfig::default()).unwrap();
    let ok = theta == 4 && report.verdict.is_yes() && certified(&game, &report.verdict);
    r.line("4b equitable {1,1,1,1}", ok, format!("theta {theta}, vc-dp says {}", if report.verdict.is_yes() { "Yes" } else { "No" }));
}

fn criterion_5(r: &mut Report) {
    let rows: Vec<bool> = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mut rr = rng(500_000 + i);
            loop {
                let n = rr.random_range(2..=14);
                let params = RandomParams {
                    n,
                    density: rr.random_range(0.05..0.5),
                    wmin: -1,
                    wmax: 1,
                    symmetric: rr.random_bool(0.5),
                    ..RandomParams::default()
                };
                let game = random_game(&params, rr.random()).unwrap();
                let width = compute_tree_decomposition(&game).width();
                if width + 1 > n {
                    continue;
                }
                let game = game.with_k(rr.random_range(width + 1..=n), Mode::KAshg).unwrap();
                let ShortcutOutcome::Yes(s) = coloring_shortcut(&game).unwrap() else { return false };
                let graph = Graph::underlying(&game);
                return check_certificate(&game, &s).is_valid() && s.coalitions().iter().all(|c| graph.is_independent(c));
            }
        })
        .collect();
    let ok = rows.iter().filter(|&&b| b).count();
    r.line("5 coloring shortcut", ok == rows.len(), format!("{ok}/{} independent certificates", rows.len()));
}

fn criterion_6(r: &mut Report) {
    let rows: Vec<(bool, bool)> = (0..10_000u64)
        .into_par_iter()
        .map(|i| {
            let model = random_ilp_model((i % 21) as usize, 600_000 + i);
            let outcome = solve_model(&model);
            let valid = match &outcome {
                hedonic_ir::ilp::IlpOutcome::Feasible(x) => model.is_satisfied(x),
                hedonic_ir::ilp::IlpOutcome::Infeasible => true,
            };
            (outcome.is_feasible() == enumerate_binary_model(&model) && valid, outcome.is_feasible())
        })
        .collect();
    let ok = rows.iter().filter(|r| r.0).count();
    let feasible = rows.iter().filter(|r| r.1).count();
    r.line("6 ilp exactness", ok == rows.len(), format!("{ok}/{} models agree with 2^d enumeration, {feasible} feasible", rows.len()));
}

fn criterion_7(r: &mut Report) {
    let inst = EquitablePartitionInstance::new(vec![1, 1, 1, 1]).unwrap();
    let game = gen_equitable_partition(&inst, EquitableOptions::default()).unwrap();
    let graph = Graph::underlying(&game);
    let negative = Graph::negative(&game).edge_count();
    let theta = compute_vertex_cover(&game).theta();
    r.line("7a equitable split graph", graph.is_split() && game.is_symmetric(), format!("split {}", graph.is_split()));
    r.line("7a equitable negative edges", negative == 4, format!("{negative} negative edges, expected 4"));
    r.line("7a equitable vertex cover", theta == 4, format!("vertex cover number {theta}"));

    let mut rr = rng(700);
    let mut worst = (0usize, 0usize);
    let mut ok = true;
    for _ in 0..40 {
        let n = rr.random_range(2..=7);
        let mut graph = Graph::new(n);
        let side: Vec<bool> = (0..n).map(|_| rr.random_bool(0.5)).collect();
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && rr.random_bool(0.5) {
                    graph.add_edge(u, v);
                }
            }
        }
        let lists = (0..n).map(|v| (0..=graph.degree(v)).filter(|_| rr.random_bool(0.5)).collect()).collect();
        let inst = GeneralFactorsInstance::new(graph, lists).unwrap();
        let game = gen_general_factors(&inst).unwrap();
        let layout = GeneralFactorsLayout::new(&inst);
        let game_graph = Graph::underlying(&game);
        let forest = layout.treedepth_certificate(&game_graph);
        let x = layout.in_x.iter().filter(|&&b| b).count();
        let bound = 12 * x + 16;
        ok &= game.is_symmetric() && game.is_binary() && forest.certifies(&game_graph) && forest.depth() <= bound;
        if forest.depth() * worst.1 >= worst.0 * bound {
            worst = (forest.depth(), bound);
        }
    }
    r.line("7b general factors structure", ok, format!("40 games symmetric and binary, tightest depth {} of bound {}", worst.0, worst.1));

    let mut total = 0;
    let (mut verbatim, mut corrected) = (0, 0);
    for mu in [2, 4, 6] {
        for values in multisets(mu, 4) {
            let sum: u64 = values.iter().sum();
            if sum % 2 == 1 {
                continue;
            }
            let inst = BinPackingInstance::new(values, 2, sum / 2).unwrap();
            let balanced = source_oracle_bin_packing(&inst, true).unwrap();
            // bounds of mu/B cannot hold all agents, so the verbatim game has no structure
            let verbatim_yes = match gen_bin_packing(&inst, BinPackingVariant::SccVerbatim) {
                Ok(g) => oracle(&g).is_yes(),
                Err(_) => false,
            };
            let corrected_yes = oracle(&gen_bin_packing(&inst, BinPackingVariant::SccCorrected).unwrap()).is_yes();
            total += 1;
            verbatim += (verbatim_yes == balanced) as usize;
            corrected += (corrected_yes == balanced) as usize;
        }
    }
    r.line(
        "7c bin packing bounds",
        corrected == total,
        format!("bounds mu/B agree on {verbatim}/{total}, bounds mu/B+2 agree on {corrected}/{total}"),
    );
}

fn criterion_8(r: &mut Report, games: &[Game]) {
    let run = || {
        let mut out = String::new();
        for (i, g) in games.iter().take(60).enumerate() {
            let params = RandomParams { n: 9, k: 3, density: 0.4, symmetric: i % 2 == 0, scc: i % 3 == 0, ..RandomParams::default() };
            let generated = random_game(&params, i as u64).unwrap();
            out += &render_instance(&generated, Some(&compute_tree_decomposition(&generated)));
            for algo in [Algo::Oracle, Algo::VcDp, Algo::Ilp, Algo::Auto] {
                if let Some(s) = solve(g, algo, None, &SolveConfig::default()).unwrap().verdict.structure() {
                    out += &render_solution(s, true);
                }
            }
        }
        let inst = GeneralFactorsInstance::new(Graph::from_edges(3, [(0, 1), (1, 2)]), vec![[1].into(), [0, 2].into(), [1].into()]).unwrap();
        out += &render_instance(&gen_general_factors(&inst).unwrap(), None);
        out += &GeneralFactorsLayout::new(&inst).manifest();
        out
    };
    let corpus: Vec<CorpusEntry> = games
        .iter()
        .take(40)
        .enumerate()
        .map(|(i, g)| CorpusEntry { name: format!("g{i:03}"), instance: parse_instance(&render_instance(g, None)).map_err(|e| e.to_string()) })
        .collect();
    let bench = |threads| {
        let rows = run_bench(&corpus, &Algo::ALL, &SolveConfig::default(), Some(threads));
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf, true).unwrap();
        buf
    };
    let first = run();
    let same_text = (0..2).all(|_| run() == first);
    let csv = bench(1);
    let same_csv = [2, 4, 1].iter().all(|&t| bench(t) == csv);
    r.line(
        "8 determinism",
        same_text && same_csv,
        format!("3 runs of solutions and generated instances identical: {same_text}; bench csv identical over 1, 2, 4 threads: {same_csv}"),
    );
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut r = Report { unexpected: 0 };
    let kashg = kashg_corpus(1200);
    let scc = scc_corpus(600);
    criterion_1(&mut r, &kashg, &scc);
    let all: Vec<Game> = kashg.iter().chain(&scc).cloned().collect();
    criterion_2(&mut r, &all);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r, &kashg);
    println!("{} unexpected failures, {:.1}s", r.unexpected, start.elapsed().as_secs_f64());
    if r.unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
