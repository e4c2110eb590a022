//! Line-oriented text format.
//!
//! ```text
//! # optional comments
//! graph <n>            |  bigraph <m> <n>
//! <u> <v>              (one edge per line, u < v)
//! ```
//!
//! For `bigraph` the parts are `0..m` and `m..m+n`. The writer emits edges in
//! lexicographic order, so `write_graph` is canonical.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found {tok:?}")))
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some(g) = graph.as_mut() else {
            graph = Some(match toks.as_slice() {
                ["graph", n] => Graph::new(parse_usize(n, line_no, "vertex count")?)
                    .map_err(|e| parse_err(line_no, e.to_string()))?,
                ["bigraph", m, n] => {
                    let m = parse_usize(m, line_no, "left part size")?;
                    let n = parse_usize(n, line_no, "right part size")?;
                    Graph::bipartite(m, n).map_err(|e| parse_err(line_no, e.to_string()))?
                }
                _ => {
                    return Err(parse_err(
                        line_no,
                        format!("malformed header {content:?}; expected `graph <n>` or `bigraph <m> <n>`"),
                    ))
                }
            });
            continue;
        };
        let [u, v] = toks.as_slice() else {
            return Err(parse_err(line_no, format!("expected `<u> <v>`, found {content:?}")));
        };
        let u = parse_usize(u, line_no, "vertex")?;
        let v = parse_usize(v, line_no, "vertex")?;
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at {u}")));
        }
        if u > v {
            return Err(parse_err(line_no, format!("edge {u} {v} must be written with u < v")));
        }
        if v >= g.n() {
            return Err(parse_err(line_no, format!("vertex {v} out of range (n = {})", g.n())));
        }
        if let Some(m) = g.left_size() {
            if (u < m) == (v < m) {
                return Err(parse_err(line_no, format!("edge {u} {v} lies within a part")));
            }
        }
        if !g.add_edge(u, v).map_err(|e| parse_err(line_no, e.to_string()))? {
            return Err(parse_err(line_no, format!("duplicate edge {u} {v}")));
        }
    }
    graph.ok_or_else(|| parse_err(1, "missing header"))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    match g.left_size() {
        Some(m) => writeln!(out, "bigraph {} {}", m, g.n() - m),
        None => writeln!(out, "graph {}", g.n()),
    }
    .unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
