//! Source-instance files for the reduction generators, in the same
//! line-oriented style as instance files.
//!
//! - equitable partition: `values <a_1 ... a_2l>`
//! - clique: `vertices <n>`, `edge <u> <v>` lines, `t <size>`
//! - bin packing: `values <a_1 ... a_mu>`, `bins <B>`, `capacity <C>`
//! - general factors: `vertices <n>`, `edge <u> <v>` lines, and
//!   `list <u> <degrees...>` lines; a vertex without a list line has an
//!   empty list.
//!
//! Vertices are 1-based.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::Graph;
use crate::io::instance::{tokenize, Line, ParseError, ParseErrorKind};
use crate::reductions::{
    BinPackingInstance, CliqueInstance, EquitablePartitionInstance, GeneralFactorsInstance, ReductionError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SourceError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Directive name to the lines carrying it, after checking every directive
/// is one of `allowed`.
fn collect<'a>(text: &'a str, allowed: &[&'static str]) -> Result<(Vec<Line<'a>>, BTreeMap<&'static str, Vec<usize>>), ParseError> {
    let lines = tokenize(text);
    let mut seen: BTreeMap<&'static str, Vec<usize>> = BTreeMap::new();
    for (i, line) in lines.iter().enumerate() {
        let head = line.tokens[0].text;
        let name = allowed
            .iter()
            .find(|&&a| a == head)
            .ok_or_else(|| line.err(0, ParseErrorKind::UnknownDirective(head.to_string())))?;
        seen.entry(name).or_default().push(i);
    }
    Ok((lines, seen))
}

fn single<'l>(lines: &'l [Line], seen: &BTreeMap<&'static str, Vec<usize>>, name: &'static str) -> Result<&'l Line<'l>, ParseError> {
    match seen.get(name).map(Vec::as_slice) {
        None | Some([]) => {
            let last = lines.last().map_or(1, |l| l.number);
            Err(ParseError { line: last, column: 1, kind: ParseErrorKind::MissingDirective(name) })
        }
        Some([at]) => Ok(&lines[*at]),
        Some([_, second, ..]) => Err(lines[*second].err(0, ParseErrorKind::RepeatedDirective(name))),
    }
}

fn count(line: &Line, name: &'static str) -> Result<usize, ParseError> {
    line.arity(1, name)?;
    let v = line.int(1, name)?;
    usize::try_from(v).map_err(|_| line.err(1, ParseErrorKind::BadInteger(v.to_string())))
}

fn positive_values(line: &Line) -> Result<Vec<u64>, ParseError> {
    let mut out = Vec::new();
    for (pos, v) in line.ints(1, "values")?.into_iter().enumerate() {
        out.push(u64::try_from(v).map_err(|_| line.err(pos + 1, ParseErrorKind::BadInteger(v.to_string())))?);
    }
    Ok(out)
}

fn vertex(line: &Line, at: usize, n: usize, name: &'static str) -> Result<usize, ParseError> {
    let v = line.int(at, name)?;
    if v < 1 || v as u64 > n as u64 {
        return Err(line.err(at, ParseErrorKind::AgentOutOfRange { agent: v, n }));
    }
    Ok(v as usize - 1)
}

fn graph(lines: &[Line], seen: &BTreeMap<&'static str, Vec<usize>>) -> Result<Graph, ParseError> {
    let n = count(single(lines, seen, "vertices")?, "vertices")?;
    let mut g = Graph::new(n);
    for &at in seen.get("edge").map_or(&[][..], Vec::as_slice) {
        let line = &lines[at];
        line.arity(2, "edge")?;
        let (u, v) = (vertex(line, 1, n, "edge")?, vertex(line, 2, n, "edge")?);
        if u == v {
            return Err(line.err(2, ParseErrorKind::SelfValuation(u as i64 + 1)));
        }
        if g.has_edge(u, v) {
            return Err(line.err(1, ParseErrorKind::DuplicateArc(u + 1, v + 1)));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

pub fn parse_equitable_source(text: &str) -> Result<EquitablePartitionInstance, SourceError> {
    let (lines, seen) = collect(text, &["values"])?;
    Ok(EquitablePartitionInstance::new(positive_values(single(&lines, &seen, "values")?)?)?)
}

pub fn parse_clique_source(text: &str) -> Result<CliqueInstance, SourceError> {
    let (lines, seen) = collect(text, &["vertices", "edge", "t"])?;
    let g = graph(&lines, &seen)?;
    let t = count(single(&lines, &seen, "t")?, "t")?;
    Ok(CliqueInstance::new(g, t)?)
}

pub fn parse_bin_packing_source(text: &str) -> Result<BinPackingInstance, SourceError> {
    let (lines, seen) = collect(text, &["values", "bins", "capacity"])?;
    let values = positive_values(single(&lines, &seen, "values")?)?;
    let bins = count(single(&lines, &seen, "bins")?, "bins")?;
    let capacity = count(single(&lines, &seen, "capacity")?, "capacity")? as u64;
    Ok(BinPackingInstance::new(values, bins, capacity)?)
}

pub fn parse_general_factors_source(text: &str) -> Result<GeneralFactorsInstance, SourceError> {
    let (lines, seen) = collect(text, &["vertices", "edge", "list"])?;
    let g = graph(&lines, &seen)?;
    let n = g.n();
    let mut lists: Vec<Option<BTreeSet<usize>>> = vec![None; n];
    for &at in seen.get("list").map_or(&[][..], Vec::as_slice) {
        let line = &lines[at];
        let u = vertex(line, 1, n, "list")?;
        if lists[u].is_some() {
            return Err(line.err(1, ParseErrorKind::RepeatedDirective("list")).into());
        }
        let mut degrees = BTreeSet::new();
        for (pos, d) in line.ints(2, "list")?.into_iter().enumerate() {
            let d = usize::try_from(d).map_err(|_| line.err(pos + 2, ParseErrorKind::BadInteger(d.to_string())))?;
            degrees.insert(d);
        }
        lists[u] = Some(degrees);
    }
    Ok(GeneralFactorsInstance::new(g, lists.into_iter().map(Option::unwrap_or_default).collect())?)
}
