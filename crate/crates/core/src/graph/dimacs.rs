use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

/// Parses the DIMACS edge format (`p edge n m`, `e u v`, 1-based).
///
/// Comment lines start with `c`. Repeated edges are accepted; self-loops
/// and out-of-range endpoints are rejected with the offending line number.
pub fn read_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                let kind = parts.next();
                if !matches!(kind, Some("edge") | Some("col")) {
                    return Err(err(format!("expected `p edge n m`, got {line:?}")));
                }
                let n: usize = parse_num(parts.next(), line_no)?;
                let _m: usize = parse_num(parts.next(), line_no)?;
                if parts.next().is_some() {
                    return Err(err("trailing tokens in problem line".into()));
                }
                graph = Some(Graph::new(n).map_err(|e| err(e.to_string()))?);
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| err("edge before problem line".into()))?;
                let u: usize = parse_num(parts.next(), line_no)?;
                let v: usize = parse_num(parts.next(), line_no)?;
                if parts.next().is_some() {
                    return Err(err("trailing tokens in edge line".into()));
                }
                if u == 0 || v == 0 || u > g.n() || v > g.n() {
                    return Err(err(format!("vertex out of range 1..={}", g.n())));
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                g.add_edge(u - 1, v - 1).map_err(|e| err(e.to_string()))?;
            }
            Some(tok) => return Err(err(format!("unknown line type {tok:?}"))),
            None => {}
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        msg: "missing `p edge` line".into(),
    })
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: "missing number".into(),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad number {tok:?}"),
    })
}

/// Header plus one `e u v` line per edge, `u < v`, in sorted order.
pub fn write_dimacs(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::with_capacity(16 + edges.len() * 10);
    writeln!(out, "p edge {} {}", g.n(), edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
