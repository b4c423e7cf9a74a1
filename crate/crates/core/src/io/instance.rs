//! Line-oriented instance files.
//!
//! ```text
//! # two agents who dislike each other
//! agents 2
//! mode kashg
//! k 2
//! sym
//! val 1 2 -1
//! ```
//!
//! `mode scc` needs `lb` and `ub` lines with `k` values each. An optional
//! `td` line starts a tree decomposition block of `bag <id> <agents...>` and
//! `edge <id> <id>` lines. Agents and bag ids are 1-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::game::{Game, GameError, Mode, SizeBound};
use crate::graph::Graph;
use crate::tw::{TdError, TreeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("`{0}` needs more arguments")]
    MissingArgument(&'static str),
    #[error("unexpected extra argument `{0}`")]
    ExtraArgument(String),
    #[error("`{0}` is not a valid integer")]
    BadInteger(String),
    #[error("unknown mode `{0}`, expected kashg or scc")]
    BadMode(String),
    #[error("`{0}` appears more than once")]
    RepeatedDirective(&'static str),
    #[error("missing `{0}` line")]
    MissingDirective(&'static str),
    #[error("size bounds are only allowed in scc mode")]
    BoundsWithoutScc,
    #[error("expected {expected} bounds, got {got}")]
    BoundCount { expected: usize, got: usize },
    #[error("agent {agent} is out of range 1..={n}")]
    AgentOutOfRange { agent: i64, n: usize },
    #[error("agent {0} cannot value itself")]
    SelfValuation(i64),
    #[error("weight must be nonzero")]
    ZeroWeight,
    #[error("arc ({0}, {1}) is given more than once")]
    DuplicateArc(usize, usize),
    #[error("`{0}` is only allowed after a `td` line")]
    OutsideTd(&'static str),
    #[error("bag {0} is defined more than once")]
    DuplicateBag(usize),
    #[error("bag ids must run from 1 to the number of bags; {0} is missing")]
    MissingBag(usize),
    #[error("bag id {0} is out of range")]
    BagOutOfRange(i64),
    #[error("agent {0} appears more than once")]
    DuplicateAgent(usize),
    #[error("agent {0} is in no coalition")]
    UnassignedAgent(usize),
    #[error("unknown status `{0}`, expected IR or NOT_IR")]
    BadStatus(String),
    #[error(transparent)]
    Game(GameError),
    #[error("tree decomposition: {0}")]
    Td(TdError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInstance {
    pub game: Game,
    pub td: Option<TreeDecomposition>,
}

pub(crate) struct Token<'a> {
    pub(crate) text: &'a str,
    pub(crate) column: usize,
}

pub(crate) struct Line<'a> {
    pub(crate) number: usize,
    pub(crate) tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    pub(crate) fn err(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        let column = self.tokens.get(at).or(self.tokens.last()).map_or(1, |t| t.column);
        ParseError { line: self.number, column, kind }
    }

    pub(crate) fn int(&self, at: usize, name: &'static str) -> Result<i64, ParseError> {
        let tok = self.tokens.get(at).ok_or_else(|| self.err(at, ParseErrorKind::MissingArgument(name)))?;
        tok.text.parse().map_err(|_| self.err(at, ParseErrorKind::BadInteger(tok.text.to_string())))
    }

    pub(crate) fn ints(&self, from: usize, name: &'static str) -> Result<Vec<i64>, ParseError> {
        (from..self.tokens.len()).map(|i| self.int(i, name)).collect()
    }

    pub(crate) fn arity(&self, args: usize, name: &'static str) -> Result<(), ParseError> {
        if self.tokens.len() < args + 1 {
            return Err(self.err(self.tokens.len(), ParseErrorKind::MissingArgument(name)));
        }
        if let Some(extra) = self.tokens.get(args + 1) {
            return Err(self.err(args + 1, ParseErrorKind::ExtraArgument(extra.text.to_string())));
        }
        Ok(())
    }
}

/// Splits text into nonempty lines of whitespace-separated tokens, dropping
/// `#` comments. Columns are 1-based character positions.
pub(crate) fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, (byte, ch)) in body.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((byte, pos)),
                (true, Some((b, p))) => {
                    tokens.push(Token { text: &body[b..byte], column: p + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, p)) = start {
            tokens.push(Token { text: &body[b..], column: p + 1 });
        }
        if !tokens.is_empty() {
            out.push(Line { number: idx + 1, tokens });
        }
    }
    out
}

fn once<T>(slot: &mut Option<T>, value: T, line: &Line, name: &'static str) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(line.err(0, ParseErrorKind::RepeatedDirective(name)));
    }
    *slot = Some(value);
    Ok(())
}

pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    let lines = tokenize(text);
    let mut n: Option<(usize, usize)> = None;
    let mut mode: Option<(bool, usize)> = None;
    let mut k: Option<(usize, usize)> = None;
    let mut lb: Option<(Vec<i64>, usize)> = None;
    let mut ub: Option<(Vec<i64>, usize)> = None;
    let mut sym: Option<usize> = None;
    let mut vals: Vec<usize> = Vec::new();
    let mut td_line: Option<usize> = None;
    let mut bags: Vec<usize> = Vec::new();
    let mut td_edges: Vec<usize> = Vec::new();

    for (i, line) in lines.iter().enumerate() {
        let head = line.tokens[0].text;
        match head {
            "agents" => {
                line.arity(1, "agents")?;
                let v = line.int(1, "agents")?;
                let v = usize::try_from(v).map_err(|_| line.err(1, ParseErrorKind::BadInteger(v.to_string())))?;
                once(&mut n, (v, i), line, "agents")?;
            }
            "mode" => {
                line.arity(1, "mode")?;
                let scc = match line.tokens[1].text {
                    "kashg" => false,
                    "scc" => true,
                    other => return Err(line.err(1, ParseErrorKind::BadMode(other.to_string()))),
                };
                once(&mut mode, (scc, i), line, "mode")?;
            }
            "k" => {
                line.arity(1, "k")?;
                let v = line.int(1, "k")?;
                let v = usize::try_from(v).map_err(|_| line.err(1, ParseErrorKind::BadInteger(v.to_string())))?;
                once(&mut k, (v, i), line, "k")?;
            }
            "lb" => once(&mut lb, (line.ints(1, "lb")?, i), line, "lb")?,
            "ub" => once(&mut ub, (line.ints(1, "ub")?, i), line, "ub")?,
            "sym" => {
                line.arity(0, "sym")?;
                once(&mut sym, i, line, "sym")?;
            }
            "val" => {
                line.arity(3, "val")?;
                vals.push(i);
            }
            "td" => {
                line.arity(0, "td")?;
                once(&mut td_line, i, line, "td")?;
            }
            "bag" | "edge" => {
                let name = if head == "bag" { "bag" } else { "edge" };
                if td_line.is_none() {
                    return Err(line.err(0, ParseErrorKind::OutsideTd(name)));
                }
                if head == "bag" {
                    line.int(1, "bag")?;
                    bags.push(i);
                } else {
                    line.arity(2, "edge")?;
                    td_edges.push(i);
                }
            }
            other => return Err(line.err(0, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }

    let eof = |kind| ParseError { line: lines.last().map_or(1, |l| l.number), column: 1, kind };
    let (n, _) = n.ok_or_else(|| eof(ParseErrorKind::MissingDirective("agents")))?;
    let (scc, mode_at) = mode.ok_or_else(|| eof(ParseErrorKind::MissingDirective("mode")))?;
    let (k, k_at) = k.ok_or_else(|| eof(ParseErrorKind::MissingDirective("k")))?;

    let mode = if scc {
        let (lb, lb_at) = lb.ok_or_else(|| lines[mode_at].err(1, ParseErrorKind::MissingDirective("lb")))?;
        let (ub, ub_at) = ub.ok_or_else(|| lines[mode_at].err(1, ParseErrorKind::MissingDirective("ub")))?;
        let mut bounds = Vec::new();
        for (vals, at) in [(&lb, lb_at), (&ub, ub_at)] {
            if vals.len() != k {
                return Err(lines[at].err(0, ParseErrorKind::BoundCount { expected: k, got: vals.len() }));
            }
            if let Some(p) = vals.iter().position(|&v| v < 0) {
                return Err(lines[at].err(p + 1, ParseErrorKind::BadInteger(vals[p].to_string())));
            }
        }
        for j in 0..k {
            bounds.push(SizeBound::new(lb[j] as usize, ub[j] as usize));
        }
        Mode::Scc(bounds)
    } else {
        if let Some((_, at)) = lb.as_ref().or(ub.as_ref()) {
            return Err(lines[*at].err(0, ParseErrorKind::BoundsWithoutScc));
        }
        Mode::KAshg
    };

    let mut arcs: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let agent = |line: &Line, at: usize| -> Result<usize, ParseError> {
        let a = line.int(at, "val")?;
        if a < 1 || a as u64 > n as u64 {
            return Err(line.err(at, ParseErrorKind::AgentOutOfRange { agent: a, n }));
        }
        Ok(a as usize - 1)
    };
    for &at in &vals {
        let line = &lines[at];
        let (i, j) = (agent(line, 1)?, agent(line, 2)?);
        if i == j {
            return Err(line.err(2, ParseErrorKind::SelfValuation(i as i64 + 1)));
        }
        let w = line.int(3, "val")?;
        if w == 0 {
            return Err(line.err(3, ParseErrorKind::ZeroWeight));
        }
        let mut pairs = vec![(i, j)];
        if sym.is_some() {
            pairs.push((j, i));
        }
        for (a, b) in pairs {
            if arcs.insert((a, b), w).is_some() {
                return Err(line.err(1, ParseErrorKind::DuplicateArc(a + 1, b + 1)));
            }
        }
    }
    let game = Game::new(n, k, mode, arcs.into_iter().map(|((i, j), w)| (i, j, w)))
        .map_err(|e| lines[k_at].err(1, ParseErrorKind::Game(e)))?;

    let td = match td_line {
        None => None,
        Some(at) => Some(parse_td(&lines, at, &bags, &td_edges, &game)?),
    };
    Ok(ParsedInstance { game, td })
}

fn parse_td(lines: &[Line], td_at: usize, bags: &[usize], edges: &[usize], game: &Game) -> Result<TreeDecomposition, ParseError> {
    let n = game.n();
    let mut by_id: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &at in bags {
        let line = &lines[at];
        let id = line.int(1, "bag")?;
        if id < 1 || id as usize > bags.len() {
            return Err(line.err(1, ParseErrorKind::BagOutOfRange(id)));
        }
        let mut members = Vec::new();
        for (pos, a) in line.ints(2, "bag")?.into_iter().enumerate() {
            if a < 1 || a as u64 > n as u64 {
                return Err(line.err(pos + 2, ParseErrorKind::AgentOutOfRange { agent: a, n }));
            }
            members.push(a as usize - 1);
        }
        if by_id.insert(id as usize - 1, members).is_some() {
            return Err(line.err(1, ParseErrorKind::DuplicateBag(id as usize)));
        }
    }
    let mut tree = Vec::new();
    for &at in edges {
        let line = &lines[at];
        let mut ends = [0usize; 2];
        for (slot, pos) in ends.iter_mut().zip([1, 2]) {
            let id = line.int(pos, "edge")?;
            if id < 1 || id as usize > bags.len() {
                return Err(line.err(pos, ParseErrorKind::BagOutOfRange(id)));
            }
            *slot = id as usize - 1;
        }
        tree.push((ends[0], ends[1]));
    }
    if let Some(missing) = (0..bags.len()).find(|b| !by_id.contains_key(b)) {
        return Err(lines[td_at].err(0, ParseErrorKind::MissingBag(missing + 1)));
    }
    let td_err = |e| lines[td_at].err(0, ParseErrorKind::Td(e));
    let td = TreeDecomposition::new(n, by_id.into_values().collect(), tree).map_err(td_err)?;
    td.validate(&Graph::underlying(game)).map_err(td_err)?;
    Ok(td)
}

/// Canonical text form. Symmetric games are written with `sym` and one
/// `val` line per unordered pair.
pub fn render_instance(game: &Game, td: Option<&TreeDecomposition>) -> String {
    let mut s = String::new();
    let mut put = |line: String| {
        s.push_str(&line);
        s.push('\n');
    };
    put(format!("agents {}", game.n()));
    match game.mode() {
        Mode::KAshg => put("mode kashg".into()),
        Mode::Scc(_) => put("mode scc".into()),
    }
    put(format!("k {}", game.k()));
    if let Some(bounds) = game.bounds() {
        put(format!("lb {}", join(bounds.iter().map(|b| b.lower))));
        put(format!("ub {}", join(bounds.iter().map(|b| b.upper))));
    }
    let sym = game.is_symmetric() && game.arc_count() > 0;
    if sym {
        put("sym".into());
    }
    for (i, j, w) in game.arcs() {
        if !sym || i < j {
            put(format!("val {} {} {}", i + 1, j + 1, w));
        }
    }
    if let Some(td) = td {
        put("td".into());
        for (id, bag) in td.bags().iter().enumerate() {
            let mut line = format!("bag {}", id + 1);
            for &a in bag {
                write!(line, " {}", a + 1).expect("writing to a string");
            }
            put(line);
        }
        for &(a, b) in td.edges() {
            put(format!("edge {} {}", a + 1, b + 1));
        }
    }
    s
}

fn join(values: impl Iterator<Item = usize>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}
