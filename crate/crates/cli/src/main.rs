use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;

use hedonic_ir::bench::{load_corpus, run_bench, threads_from_env, write_csv};
use hedonic_ir::dispatch::{solve, Algo, SolveConfig};
use hedonic_ir::graph::Graph;
use hedonic_ir::io::{
    parse_bin_packing_source, parse_clique_source, parse_equitable_source, parse_general_factors_source,
    parse_instance, parse_solution, render_instance, render_solution,
};
use hedonic_ir::oracle::OracleConfig;
use hedonic_ir::random::{random_game, random_split_game, rng, RandomParams};
use hedonic_ir::reductions::{
    gen_bin_packing, gen_clique, gen_equitable_partition, gen_general_factors, BinPackingVariant, EquitableOptions,
    GeneralFactorsLayout,
};
use hedonic_ir::tw::{decompose, TreeDecomposition};
use hedonic_ir::{check_certificate, Certificate, Game, Verdict};

#[derive(Parser)]
#[command(name = "hedonic-ir", version, about = "Decide individual rationality in constrained hedonic games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance. Exit 0 = an IR structure exists, 1 = none, 2 = error or refusal.
    Solve(SolveArgs),
    /// Write an instance file to stdout, from a reduction or a random model.
    Generate(GenerateArgs),
    /// Run algorithms over a corpus directory and print CSV.
    Bench(BenchArgs),
    /// Verify a solution file. Exit 0 = IR, 1 = not IR, 2 = error or wrong status line.
    Check(CheckArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "auto", value_parser = parse_algo)]
    algo: Algo,
    /// Print the certificate as a solution file instead of YES/NO.
    #[arg(long)]
    emit_solution: bool,
    /// Solve a randomly relabeled copy and map the answer back.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_oracle_n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    EquitablePartition,
    Clique,
    BinPacking,
    GeneralFactors,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Kashg,
    SccVerbatim,
    SccCorrected,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, conflicts_with = "random")]
    reduction: Option<Reduction>,
    /// Source instance file; the inline flags below add lines to it.
    #[arg(long)]
    source: Option<PathBuf>,
    /// Comma-separated values.
    #[arg(long)]
    values: Option<String>,
    #[arg(long)]
    vertices: Option<usize>,
    /// Comma-separated `u-v` pairs, 1-based.
    #[arg(long)]
    edges: Option<String>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    capacity: Option<u64>,
    /// Semicolon-separated `u:d1,d2` lists.
    #[arg(long)]
    lists: Option<String>,
    /// Bin packing bounds.
    #[arg(long, value_enum, default_value = "kashg")]
    variant: Variant,
    /// Equitable partition: generate even if small subsets reach half the total.
    #[arg(long)]
    skip_promise_check: bool,
    /// Write the general-factors role manifest here.
    #[arg(long)]
    manifest: Option<PathBuf>,

    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    wmin: i64,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    wmax: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    symmetric: bool,
    /// Equitable partition or random: emit a size-constrained game.
    #[arg(long)]
    scc: bool,
    /// Random: split graph with a clique part of this size.
    #[arg(long)]
    split: Option<usize>,

    /// Append a computed tree decomposition.
    #[arg(long)]
    with_td: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// Comma-separated algorithm names.
    #[arg(long, default_value = "oracle,vc-dp,ilp,tw-dp")]
    algos: String,
    /// Leave the time column empty.
    #[arg(long)]
    omit_time: bool,
    #[arg(long)]
    max_oracle_n: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    s.parse().map_err(|e: hedonic_ir::dispatch::UnknownAlgo| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Generate(a) => cmd_generate(a).map(|()| 0),
        Command::Bench(a) => cmd_bench(a).map(|()| 0),
        Command::Check(a) => cmd_check(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn config(max_oracle_n: Option<usize>) -> SolveConfig {
    let mut cfg = SolveConfig::default();
    if let Some(l) = max_oracle_n {
        cfg.oracle = OracleConfig::with_limit(l);
    }
    cfg
}

fn relabel_td(td: &TreeDecomposition, perm: &[usize]) -> TreeDecomposition {
    let bags = td.bags().iter().map(|b| b.iter().map(|&a| perm[a]).collect()).collect();
    TreeDecomposition::new(td.n(), bags, td.edges().to_vec()).expect("relabeling keeps the shape")
}

fn cmd_solve(args: SolveArgs) -> Result<u8> {
    let parsed = parse_instance(&read(&args.input)?).context("parsing instance")?;
    let cfg = config(args.max_oracle_n);
    let game = &parsed.game;
    let verdict = match args.seed {
        None => solve(game, args.algo, parsed.td.as_ref(), &cfg)?.verdict,
        Some(seed) => {
            let mut perm: Vec<usize> = (0..game.n()).collect();
            perm.shuffle(&mut rng(seed));
            let mut inverse = vec![0; perm.len()];
            for (a, &p) in perm.iter().enumerate() {
                inverse[p] = a;
            }
            let relabeled = game.permuted(&perm)?;
            let td = parsed.td.as_ref().map(|td| relabel_td(td, &perm));
            match solve(&relabeled, args.algo, td.as_ref(), &cfg)?.verdict {
                Verdict::Yes(s) => Verdict::Yes(s.permuted(&inverse)),
                Verdict::No => Verdict::No,
            }
        }
    };
    let mut out = std::io::stdout().lock();
    match verdict {
        Verdict::Yes(s) => {
            if let Certificate::Invalid(v) = check_certificate(game, &s) {
                bail!("solver returned an invalid certificate: {v}");
            }
            if args.emit_solution {
                out.write_all(render_solution(&s, true).as_bytes())?;
            } else {
                writeln!(out, "YES")?;
            }
            Ok(0)
        }
        Verdict::No => {
            writeln!(out, "NO")?;
            Ok(1)
        }
    }
}

/// Source file contents followed by one line per inline flag.
fn source_text(args: &GenerateArgs) -> Result<String> {
    let mut text = match &args.source {
        Some(p) => read(p)?,
        None => String::new(),
    };
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    let mut line = |l: String| {
        text.push_str(&l);
        text.push('\n');
    };
    if let Some(v) = &args.values {
        line(format!("values {}", v.split(',').map(str::trim).collect::<Vec<_>>().join(" ")));
    }
    if let Some(n) = args.vertices {
        line(format!("vertices {n}"));
    }
    if let Some(es) = &args.edges {
        for e in es.split(',').filter(|e| !e.trim().is_empty()) {
            let (u, v) = e.split_once('-').with_context(|| format!("edge `{e}` is not of the form u-v"))?;
            line(format!("edge {} {}", u.trim(), v.trim()));
        }
    }
    if let Some(t) = args.t {
        line(format!("t {t}"));
    }
    if let Some(b) = args.bins {
        line(format!("bins {b}"));
    }
    if let Some(c) = args.capacity {
        line(format!("capacity {c}"));
    }
    if let Some(ls) = &args.lists {
        for l in ls.split(';').filter(|l| !l.trim().is_empty()) {
            let (u, ds) = l.split_once(':').with_context(|| format!("list `{l}` is not of the form u:d1,d2"))?;
            let ds: Vec<&str> = ds.split(',').map(str::trim).filter(|d| !d.is_empty()).collect();
            line(format!("list {} {}", u.trim(), ds.join(" ")).trim_end().to_string());
        }
    }
    Ok(text)
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let game = match (args.reduction, args.random) {
        (Some(r), _) => generate_reduction(r, &args)?,
        (None, true) => {
            let params = RandomParams {
                n: args.n,
                k: args.k,
                density: args.density,
                wmin: args.wmin,
                wmax: args.wmax,
                symmetric: args.symmetric || args.split.is_some(),
                scc: args.scc,
            };
            match args.split {
                Some(c) => random_split_game(&params, c, args.seed)?,
                None => random_game(&params, args.seed)?,
            }
        }
        (None, false) => bail!("pass --reduction <kind> or --random"),
    };
    let td = args.with_td.then(|| decompose(&Graph::underlying(&game)));
    std::io::stdout().lock().write_all(render_instance(&game, td.as_ref()).as_bytes())?;
    Ok(())
}

fn generate_reduction(kind: Reduction, args: &GenerateArgs) -> Result<Game> {
    let text = source_text(args)?;
    let game = match kind {
        Reduction::EquitablePartition => {
            let inst = parse_equitable_source(&text)?;
            let opts = EquitableOptions { skip_promise_check: args.skip_promise_check, scc: args.scc };
            gen_equitable_partition(&inst, opts)?
        }
        Reduction::Clique => gen_clique(&parse_clique_source(&text)?)?,
        Reduction::BinPacking => {
            let variant = match args.variant {
                Variant::Kashg => BinPackingVariant::KAshg,
                Variant::SccVerbatim => BinPackingVariant::SccVerbatim,
                Variant::SccCorrected => BinPackingVariant::SccCorrected,
            };
            gen_bin_packing(&parse_bin_packing_source(&text)?, variant)?
        }
        Reduction::GeneralFactors => {
            let inst = parse_general_factors_source(&text)?;
            if let Some(path) = &args.manifest {
                let manifest = GeneralFactorsLayout::new(&inst).manifest();
                fs::write(path, manifest).with_context(|| format!("writing {}", path.display()))?;
            }
            gen_general_factors(&inst)?
        }
    };
    Ok(game)
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let algos = args.algos.split(',').map(|a| a.trim().parse::<Algo>()).collect::<Result<Vec<_>, _>>()?;
    let corpus = load_corpus(&args.corpus).with_context(|| format!("reading corpus {}", args.corpus.display()))?;
    let rows = run_bench(&corpus, &algos, &config(args.max_oracle_n), threads_from_env());
    write_csv(&rows, std::io::stdout().lock(), args.omit_time)?;
    Ok(())
}

fn cmd_check(args: CheckArgs) -> Result<u8> {
    let parsed = parse_instance(&read(&args.input)?).context("parsing instance")?;
    let solution = parse_solution(&read(&args.solution)?, parsed.game.n()).context("parsing solution")?;
    let certificate = check_certificate(&parsed.game, &solution.structure);
    let mut out = std::io::stdout().lock();
    match &certificate {
        Certificate::Valid => writeln!(out, "IR")?,
        Certificate::Invalid(v) => writeln!(out, "NOT_IR: {v}")?,
    }
    if certificate.is_valid() != solution.ir {
        bail!("solution file claims status {}", if solution.ir { "IR" } else { "NOT_IR" });
    }
    Ok(if certificate.is_valid() { 0 } else { 1 })
}
