//! Runs every (instance, algorithm) cell of a corpus and writes one CSV row
//! per cell. Refusals are rows too, never skipped.

use std::fs;
use std::io;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::dispatch::{solve, Algo, SolveConfig};
use crate::game::check_certificate;
use crate::io::{parse_instance, ParsedInstance};

pub const THREADS_ENV: &str = "HEDONIC_IR_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchVerdict {
    Yes,
    No,
    Refused,
    Error,
}

impl BenchVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            BenchVerdict::Yes => "YES",
            BenchVerdict::No => "NO",
            BenchVerdict::Refused => "REFUSED",
            BenchVerdict::Error => "ERROR",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub algo: Algo,
    pub verdict: BenchVerdict,
    pub time_ms: f64,
    pub work: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    /// Parse failures are kept so they show up as `ERROR` rows.
    pub instance: Result<ParsedInstance, String>,
}

/// Every regular file in `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> io::Result<Vec<CorpusEntry>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            paths.push(entry.path());
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p)?;
            let name = p.file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned());
            Ok(CorpusEntry { name, instance: parse_instance(&text).map_err(|e| e.to_string()) })
        })
        .collect()
}

/// Worker count from the environment; unset or unparsable means rayon's
/// default.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&t| t > 0)
}

fn run_cell(entry: &CorpusEntry, algo: Algo, config: &SolveConfig) -> BenchRow {
    let row = |verdict, time_ms, work| BenchRow { instance: entry.name.clone(), algo, verdict, time_ms, work };
    let parsed = match &entry.instance {
        Ok(p) => p,
        Err(_) => return row(BenchVerdict::Error, 0.0, None),
    };
    let start = Instant::now();
    let result = solve(&parsed.game, algo, parsed.td.as_ref(), config);
    let time_ms = start.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok(report) => {
            let verdict = match report.verdict.structure() {
                None => BenchVerdict::No,
                Some(s) if check_certificate(&parsed.game, s).is_valid() => BenchVerdict::Yes,
                Some(_) => BenchVerdict::Error,
            };
            row(verdict, time_ms, Some(report.work))
        }
        Err(_) => row(BenchVerdict::Refused, time_ms, None),
    }
}

/// Rows come out instance-major in corpus order, whatever the thread count.
pub fn run_bench(corpus: &[CorpusEntry], algos: &[Algo], config: &SolveConfig, threads: Option<usize>) -> Vec<BenchRow> {
    let cells: Vec<(usize, Algo)> = (0..corpus.len()).flat_map(|i| algos.iter().map(move |&a| (i, a))).collect();
    let work = || cells.par_iter().map(|&(i, a)| run_cell(&corpus[i], a, config)).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    match builder.build() {
        Ok(pool) => pool.install(work),
        Err(_) => cells.iter().map(|&(i, a)| run_cell(&corpus[i], a, config)).collect(),
    }
}

/// Header `instance,algo,verdict,time_ms,work`. With `omit_time` the time
/// column is left empty so runs compare byte for byte.
pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W, omit_time: bool) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["instance", "algo", "verdict", "time_ms", "work"])?;
    for r in rows {
        let time = if omit_time { String::new() } else { format!("{:.3}", r.time_ms) };
        let work = r.work.map_or_else(String::new, |w| w.to_string());
        w.write_record([r.instance.as_str(), r.algo.name(), r.verdict.as_str(), &time, &work])?;
    }
    w.flush()?;
    Ok(())
}
