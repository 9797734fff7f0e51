//! Text formats: the line-oriented system file, DOT export and bracket forests.
//!
//! A system file has one line `i j` per node meaning `f(i) = j`, with ids
//! `0..m`. Text after `#` is a comment and blank lines are ignored.

use std::fmt::Write as _;

use crate::fdds::{Fdds, FddsError};
use crate::tree::Forest;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected two node ids, found {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: node {node} is already defined")]
    Duplicate { line: usize, node: usize },
    #[error(transparent)]
    Invalid(#[from] FddsError),
}

/// Parses a system file.
pub fn parse_fdds(text: &str) -> Result<Fdds, ParseError> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut fields = body.split_whitespace();
        let parsed = match (fields.next(), fields.next(), fields.next()) {
            (Some(i), Some(j), None) => i.parse::<usize>().ok().zip(j.parse::<usize>().ok()),
            _ => None,
        };
        let Some((i, j)) = parsed else {
            return Err(ParseError::Syntax {
                line,
                text: raw.to_string(),
            });
        };
        if !seen.insert(i) {
            return Err(ParseError::Duplicate { line, node: i });
        }
        pairs.push((i, j));
    }
    Ok(Fdds::from_pairs(&pairs)?)
}

/// Writes a system in canonical numbering, one `i j` line per node.
pub fn format_fdds(a: &Fdds) -> String {
    let c = a.canonical_relabel();
    let mut out = String::with_capacity(c.len() * 6);
    for v in 0..c.len() {
        let _ = writeln!(out, "{} {}", v, c.succ(v));
    }
    out
}

/// Graphviz digraph with the original node ids; periodic nodes are drawn
/// as double circles.
pub fn to_dot(a: &Fdds) -> String {
    let periodic = a.periodic_nodes();
    let mut is_periodic = vec![false; a.len()];
    for v in periodic {
        is_periodic[v] = true;
    }
    let mut out = String::from("digraph fdds {\n");
    for (v, &p) in is_periodic.iter().enumerate() {
        let shape = if p { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {v} [shape={shape}];");
    }
    for v in 0..a.len() {
        let _ = writeln!(out, "  {} -> {};", v, a.succ(v));
    }
    out.push_str("}\n");
    out
}

/// One bracket-coded tree per line in ascending order, repeated by multiplicity.
pub fn format_forest(f: &Forest) -> String {
    let mut out = String::new();
    for t in f.trees() {
        out.push_str(&t.to_brackets());
        out.push('\n');
    }
    out
}
