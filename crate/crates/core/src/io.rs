//! Edge-list input and CSV score output.
//!
//! Edge lists hold one edge per line, `u v` or `u v w`, whitespace separated,
//! 0-based ids. Lines starting with `#` and blank lines are skipped.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub fn parse_edge_list(text: &str, weighted: bool) -> Result<Graph> {
    let mut edges: Vec<(NodeId, NodeId, f64, usize)> = Vec::new();
    let mut n = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line, msg };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(err(format!("expected `u v` or `u v w`, got {} fields", fields.len())));
        }
        let id = |s: &str| {
            s.parse::<NodeId>()
                .map_err(|_| err(format!("invalid node id `{s}`")))
        };
        let u = id(fields[0])?;
        let v = id(fields[1])?;
        if u == v {
            return Err(err(format!("self-loop on node {u}")));
        }
        if u.max(v) >= u32::MAX as usize {
            return Err(err(format!("node id {} too large", u.max(v))));
        }
        let w = match (weighted, fields.get(2)) {
            (true, Some(s)) => {
                let w: f64 = s.parse().map_err(|_| err(format!("invalid weight `{s}`")))?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(err(format!("weight must be strictly positive, got {w}")));
                }
                w
            }
            _ => 1.0,
        };
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v, w, line));
    }
    let mut g = Graph::new(n, weighted);
    for (u, v, w, line) in edges {
        g.add_edge(u, v, w).map_err(|e| match e {
            Error::DuplicateEdge { u, v } => Error::Parse {
                line,
                msg: format!("duplicate edge {{{u},{v}}}"),
            },
            other => other,
        })?;
    }
    Ok(g)
}

pub fn read_edge_list(path: impl AsRef<Path>, weighted: bool) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    parse_edge_list(&text, weighted)
}

pub fn write_edge_list<W: Write>(out: W, g: &Graph) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    for (u, v, w) in g.edges() {
        if g.is_weighted() {
            writeln!(out, "{u} {v} {w}")?;
        } else {
            writeln!(out, "{u} {v}")?;
        }
    }
    out.flush()
}

/// CSV `node,score` with nine decimals.
pub fn write_scores<W: Write>(out: W, scores: &[f64]) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "node,score")?;
    for (v, s) in scores.iter().enumerate() {
        writeln!(out, "{v},{s:.9}")?;
    }
    out.flush()
}

pub fn write_scores_file(path: impl AsRef<Path>, scores: &[f64]) -> Result<()> {
    write_scores(fs::File::create(path)?, scores)?;
    Ok(())
}
