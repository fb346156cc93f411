//! Line-oriented text format for instances and solutions.
//!
//! ```text
//! c a comment
//! p edp <n> <m> <p>        | p mdedp <n> <m> <l> | p muedp <n> <m> <l>
//! e <u> <v>                (m lines)
//! t <a> <b>                | t <s> <t> <count>
//! ```
//!
//! Solutions start with `s yes` or `s no`, followed by
//! `path <pair>: <edge> <edge> ...`, all 1-based.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Multigraph;
use crate::instance::{Demand, EdpInstance, MultiDemandInstance, PathSet, TerminalPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header")]
    MalformedHeader,
    #[error("missing header")]
    MissingHeader,
    #[error("malformed line")]
    MalformedLine,
    #[error("vertex id out of range")]
    VertexOutOfRange,
    #[error("self-loop")]
    SelfLoop,
    #[error("edge count mismatch")]
    EdgeCountMismatch,
    #[error("pair count mismatch")]
    PairCountMismatch,
    #[error("terminals of a pair coincide")]
    DegeneratePair,
    #[error("edge index out of range")]
    EdgeOutOfRange,
    #[error("pair index out of range")]
    PairOutOfRange,
    #[error("missing verdict line")]
    MissingVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedInstance {
    Edp(EdpInstance),
    Multi(MultiDemandInstance),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Edp,
    Directed,
    Undirected,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn numbers(fields: &[&str], line: usize) -> Result<Vec<usize>, ParseError> {
    fields
        .iter()
        .map(|f| f.parse::<usize>().map_err(|_| err(line, ParseErrorKind::MalformedLine)))
        .collect()
}

pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut header: Option<(Kind, usize, usize, usize, usize)> = None;
    let mut graph = Multigraph::new(0);
    let mut pairs = Vec::new();
    let mut demands = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = fields.first() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() || fields.len() != 5 {
                    return Err(err(line, ParseErrorKind::MalformedHeader));
                }
                let kind = match fields[1] {
                    "edp" => Kind::Edp,
                    "mdedp" => Kind::Directed,
                    "muedp" => Kind::Undirected,
                    _ => return Err(err(line, ParseErrorKind::MalformedHeader)),
                };
                let nums = numbers(&fields[2..], line)
                    .map_err(|_| err(line, ParseErrorKind::MalformedHeader))?;
                graph = if kind == Kind::Directed {
                    Multigraph::new_directed(nums[0])
                } else {
                    Multigraph::new(nums[0])
                };
                header = Some((kind, nums[0], nums[1], nums[2], line));
            }
            "e" => {
                let Some((_, n, m, _, _)) = header else {
                    return Err(err(line, ParseErrorKind::MissingHeader));
                };
                if fields.len() != 3 {
                    return Err(err(line, ParseErrorKind::MalformedLine));
                }
                let nums = numbers(&fields[1..], line)?;
                if nums.iter().any(|&v| v == 0 || v > n) {
                    return Err(err(line, ParseErrorKind::VertexOutOfRange));
                }
                if nums[0] == nums[1] {
                    return Err(err(line, ParseErrorKind::SelfLoop));
                }
                if graph.m() == m {
                    return Err(err(line, ParseErrorKind::EdgeCountMismatch));
                }
                graph.add_edge(nums[0], nums[1]).expect("checked above");
            }
            "t" => {
                let Some((kind, n, _, p, _)) = header else {
                    return Err(err(line, ParseErrorKind::MissingHeader));
                };
                let want = if kind == Kind::Edp { 3 } else { 4 };
                if fields.len() != want {
                    return Err(err(line, ParseErrorKind::MalformedLine));
                }
                let nums = numbers(&fields[1..], line)?;
                if nums[..2].iter().any(|&v| v == 0 || v > n) {
                    return Err(err(line, ParseErrorKind::VertexOutOfRange));
                }
                if nums[0] == nums[1] {
                    return Err(err(line, ParseErrorKind::DegeneratePair));
                }
                if pairs.len() + demands.len() == p {
                    return Err(err(line, ParseErrorKind::PairCountMismatch));
                }
                if kind == Kind::Edp {
                    pairs.push(TerminalPair::new(nums[0], nums[1]));
                } else {
                    demands.push(Demand {
                        s: nums[0],
                        t: nums[1],
                        count: nums[2],
                    });
                }
            }
            _ => return Err(err(line, ParseErrorKind::MalformedLine)),
        }
    }
    let Some((kind, _, m, p, _)) = header else {
        return Err(err(last_line.max(1), ParseErrorKind::MissingHeader));
    };
    let end = last_line.max(1);
    if graph.m() != m {
        return Err(err(end, ParseErrorKind::EdgeCountMismatch));
    }
    if pairs.len() + demands.len() != p {
        return Err(err(end, ParseErrorKind::PairCountMismatch));
    }
    Ok(match kind {
        Kind::Edp => ParsedInstance::Edp(EdpInstance::new(graph, pairs)),
        _ => ParsedInstance::Multi(MultiDemandInstance { graph, demands }),
    })
}

pub fn write_instance(inst: &EdpInstance) -> String {
    write_instance_with_comments(inst, &[])
}

pub fn write_instance_with_comments(inst: &EdpInstance, comments: &[String]) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edp {} {} {}", g.n(), g.m(), inst.pairs.len());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    for p in &inst.pairs {
        let _ = writeln!(out, "t {} {}", p.s, p.t);
    }
    out
}

pub fn write_multi_instance(inst: &MultiDemandInstance, comments: &[String]) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let tag = if g.is_directed() { "mdedp" } else { "muedp" };
    let _ = writeln!(out, "p {tag} {} {} {}", g.n(), g.m(), inst.demands.len());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    for d in &inst.demands {
        let _ = writeln!(out, "t {} {} {}", d.s, d.t, d.count);
    }
    out
}

/// A solution file as read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub yes: bool,
    pub paths: PathSet,
}

pub fn write_solution(sol: Option<&PathSet>) -> String {
    let Some(sol) = sol else {
        return "s no\n".to_string();
    };
    let mut out = String::from("s yes\n");
    for (i, path) in sol.paths.iter().enumerate() {
        let _ = write!(out, "path {}:", i + 1);
        for e in path {
            let _ = write!(out, " {}", e + 1);
        }
        out.push('\n');
    }
    out
}

/// Reads a solution for an instance with `pairs` pairs and `m` edges.
/// Pairs without a line get an empty path, which the verifier rejects.
pub fn parse_solution(text: &str, pairs: usize, m: usize) -> Result<SolutionFile, ParseError> {
    let mut yes = None;
    let mut paths = vec![Vec::new(); pairs];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with("c ") || trimmed == "c" {
            continue;
        }
        if yes.is_none() {
            yes = match trimmed {
                "s yes" => Some(true),
                "s no" => Some(false),
                _ => return Err(err(line, ParseErrorKind::MissingVerdict)),
            };
            continue;
        }
        let rest = trimmed
            .strip_prefix("path ")
            .ok_or_else(|| err(line, ParseErrorKind::MalformedLine))?;
        let (head, tail) = rest
            .split_once(':')
            .ok_or_else(|| err(line, ParseErrorKind::MalformedLine))?;
        let index: usize = head
            .trim()
            .parse()
            .map_err(|_| err(line, ParseErrorKind::MalformedLine))?;
        if index == 0 || index > pairs {
            return Err(err(line, ParseErrorKind::PairOutOfRange));
        }
        let fields: Vec<&str> = tail.split_whitespace().collect();
        let edges = numbers(&fields, line)?;
        if edges.iter().any(|&e| e == 0 || e > m) {
            return Err(err(line, ParseErrorKind::EdgeOutOfRange));
        }
        paths[index - 1] = edges.into_iter().map(|e| e - 1).collect();
    }
    let yes = yes.ok_or_else(|| err(text.lines().count().max(1), ParseErrorKind::MissingVerdict))?;
    Ok(SolutionFile {
        yes,
        paths: PathSet { paths },
    })
}
