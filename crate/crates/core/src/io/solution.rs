//! Solution files: one `coalition <j>: <agents>` line per coalition, then
//! `status IR` or `status NOT_IR`. Agents and coalitions are 1-based.

use std::fmt::Write as _;

use crate::game::CoalitionStructure;
use crate::io::instance::{tokenize, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub structure: CoalitionStructure,
    pub ir: bool,
}

pub fn render_solution(structure: &CoalitionStructure, ir: bool) -> String {
    let mut s = String::new();
    for (j, members) in structure.coalitions().iter().enumerate() {
        write!(s, "coalition {}:", j + 1).expect("writing to a string");
        for &a in members {
            write!(s, " {}", a + 1).expect("writing to a string");
        }
        s.push('\n');
    }
    s.push_str(if ir { "status IR\n" } else { "status NOT_IR\n" });
    s
}

/// Parses a solution for `n` agents. Coalitions must be numbered `1..=k` in
/// order and together partition `1..=n`.
pub fn parse_solution(text: &str, n: usize) -> Result<SolutionFile, ParseError> {
    let lines = tokenize(text);
    let mut assignment = vec![usize::MAX; n];
    let mut k = 0;
    let mut ir = None;
    for line in &lines {
        if ir.is_some() {
            return Err(line.err(0, ParseErrorKind::ExtraArgument(line.tokens[0].text.to_string())));
        }
        match line.tokens[0].text {
            "coalition" => {
                let label = line.tokens.get(1).ok_or_else(|| line.err(1, ParseErrorKind::MissingArgument("coalition")))?;
                let id = label.text.strip_suffix(':').and_then(|t| t.parse::<usize>().ok());
                if id != Some(k + 1) {
                    return Err(line.err(1, ParseErrorKind::BadInteger(label.text.to_string())));
                }
                for (pos, a) in line.ints(2, "coalition")?.into_iter().enumerate() {
                    if a < 1 || a as u64 > n as u64 {
                        return Err(line.err(pos + 2, ParseErrorKind::AgentOutOfRange { agent: a, n }));
                    }
                    let slot = &mut assignment[a as usize - 1];
                    if *slot != usize::MAX {
                        return Err(line.err(pos + 2, ParseErrorKind::DuplicateAgent(a as usize)));
                    }
                    *slot = k;
                }
                k += 1;
            }
            "status" => {
                line.arity(1, "status")?;
                ir = Some(match line.tokens[1].text {
                    "IR" => true,
                    "NOT_IR" => false,
                    other => return Err(line.err(1, ParseErrorKind::BadStatus(other.to_string()))),
                });
            }
            other => return Err(line.err(0, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }
    let last = lines.last().map_or(1, |l| l.number);
    let ir = ir.ok_or(ParseError { line: last, column: 1, kind: ParseErrorKind::MissingDirective("status") })?;
    if let Some(a) = assignment.iter().position(|&c| c == usize::MAX) {
        return Err(ParseError { line: last, column: 1, kind: ParseErrorKind::UnassignedAgent(a + 1) });
    }
    let structure = CoalitionStructure::new(k.max(1), assignment).expect("labels below k");
    Ok(SolutionFile { structure, ir })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = CoalitionStructure::new(3, vec![1, 0, 1, 0]).unwrap();
        let text = render_solution(&s, true);
        assert_eq!(text, "coalition 1: 2 4\ncoalition 2: 1 3\ncoalition 3:\nstatus IR\n");
        assert_eq!(parse_solution(&text, 4).unwrap(), SolutionFile { structure: s, ir: true });
    }

    #[test]
    fn rejects_non_partitions() {
        let e = parse_solution("coalition 1: 1 2\ncoalition 2: 2\nstatus IR\n", 3).unwrap_err();
        assert_eq!((e.line, e.kind), (2, ParseErrorKind::DuplicateAgent(2)));
        let e = parse_solution("coalition 1: 1 2\nstatus NOT_IR\n", 3).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnassignedAgent(3));
        let e = parse_solution("coalition 2: 1\nstatus IR\n", 1).unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
        assert!(parse_solution("coalition 1: 1\n", 1).is_err());
        assert!(parse_solution("coalition 1: 1\nstatus MAYBE\n", 1).is_err());
    }
}
