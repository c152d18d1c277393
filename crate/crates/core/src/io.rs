//! `.sg` text format and its JSON mirror.
//!
//! ```text
//! # optional comments
//! n m
//! u v +
//! u v -
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

pub fn to_sg(g: &SignedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v, s) in g.edges() {
        out.push_str(&format!("{u} {v} {}\n", s.symbol()));
    }
    out
}

pub fn from_sg(text: &str) -> Result<SignedGraph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_err = |line, msg: String| Error::Parse { line, msg };

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header".into()))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 2 {
        return Err(parse_err(hline, format!("expected `n m`, found `{header}`")));
    }
    let n: usize = h[0].parse().map_err(|_| parse_err(hline, format!("bad vertex count `{}`", h[0])))?;
    let m: usize = h[1].parse().map_err(|_| parse_err(hline, format!("bad edge count `{}`", h[1])))?;

    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 3 {
            return Err(parse_err(line, format!("expected `u v s`, found `{l}`")));
        }
        let u: usize = f[0].parse().map_err(|_| parse_err(line, format!("bad vertex `{}`", f[0])))?;
        let v: usize = f[1].parse().map_err(|_| parse_err(line, format!("bad vertex `{}`", f[1])))?;
        let s = match f[2] {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            other => return Err(parse_err(line, format!("bad sign `{other}`, expected + or -"))),
        };
        edges.push((u, v, s));
    }
    if edges.len() != m {
        return Err(parse_err(hline, format!("header promises {m} edges, found {}", edges.len())));
    }
    SignedGraph::new(n, &edges)
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<(usize, usize, i64)>,
}

pub fn to_json(g: &SignedGraph) -> String {
    let j = JsonGraph { n: g.n(), edges: g.edges().into_iter().map(|(u, v, s)| (u, v, s.value())).collect() };
    serde_json::to_string(&j).expect("plain data serialises")
}

pub fn from_json(text: &str) -> Result<SignedGraph> {
    let j: JsonGraph = serde_json::from_str(text)?;
    let mut edges = Vec::with_capacity(j.edges.len());
    for (u, v, s) in j.edges {
        let s = Sign::from_value(s)
            .ok_or_else(|| Error::Parse { line: 1, msg: format!("sign must be 1 or -1, got {s}") })?;
        edges.push((u, v, s));
    }
    SignedGraph::new(j.n, &edges)
}

/// Reads either format, deciding by the first non-blank character.
pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_sg(text)
    }
}
