//! Plain-text edge lists.
//!
//! ```text
//! vertices=<n> edges=<m> degree=<d>
//! u v
//! ...
//! ```
//! Endpoints are 0-based with `u < v`. Vertex 0 is the origin.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::sets::VertexId;

pub fn read_edge_list(path: &Path) -> Result<FiniteGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}

pub fn parse_edge_list(text: &str) -> Result<FiniteGraph> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let (mut n, mut m, mut d) = (None, None, None);
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header field {field:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Error::Parse(format!("bad header value {field:?}")))?;
        match key {
            "vertices" => n = Some(value),
            "edges" => m = Some(value),
            "degree" => d = Some(value),
            _ => return Err(Error::Parse(format!("unknown header key {key:?}"))),
        }
    }
    let (n, m, d) = match (n, m, d) {
        (Some(n), Some(m), Some(d)) => (n, m, d),
        _ => return Err(Error::Parse("header needs vertices=, edges= and degree=".into())),
    };
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines.enumerate() {
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<u32> {
            parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: expected `u v`", lineno + 2)))
        };
        let (u, v) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(Error::Parse(format!("line {}: trailing data", lineno + 2)));
        }
        if u >= v {
            return Err(Error::invalid(format!("line {}: need u < v, got {u} {v}", lineno + 2)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::invalid(format!("header says {m} edges, found {}", edges.len())));
    }
    FiniteGraph::from_edges(n, &edges, d, VertexId(0))
}

pub fn write_edge_list(g: &FiniteGraph) -> String {
    let mut out = format!(
        "vertices={} edges={} degree={}\n",
        g.vertex_count(),
        g.edge_count(),
        g.degree_bound()
    );
    for (_, u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u.0, v.0);
    }
    out
}
