//! Brute-force reference enumeration over every labelled signed graph.
//!
//! Each pair of vertices is absent, positive or negative, giving `3^C(n,2)`
//! graphs. No switching reduction is used; class multiplicities are divided by
//! the `2^(n - c)` labelled graphs in each switching class at the end, so they
//! are comparable with [`enumerate_extremal`](super::enumerate_extremal).

use std::time::Instant;

use crate::error::{Error, Result};
use crate::forbidden::{is_forbidden_free, ForbiddenSpec};
use crate::graph::{Sign, SignedGraph};
use crate::spectra::index;
use crate::switching::switching_normal_form;

use super::pool::ClassPool;
use super::{entries_from_pool, SearchMode, SearchReport, Tolerances, Totals, SCHEMA};

pub const MAX_NAIVE_N: usize = 6;

pub fn enumerate_naive(n: usize, spec: &ForbiddenSpec, top_k: usize) -> Result<SearchReport> {
    enumerate_naive_tuned(n, spec, top_k, Tolerances::default())
}

pub fn enumerate_naive_tuned(n: usize, spec: &ForbiddenSpec, top_k: usize, tol: Tolerances) -> Result<SearchReport> {
    tol.validate()?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > MAX_NAIVE_N {
        return Err(Error::SizeLimit { n, limit: MAX_NAIVE_N });
    }
    if top_k == 0 {
        return Err(Error::Range("top_k must be at least 1".into()));
    }
    let start = Instant::now();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 3u64.pow(pairs.len() as u32);
    let mut pool = ClassPool::new(top_k, MAX_NAIVE_N, tol.class);
    let mut totals = Totals::default();
    let mut edges = Vec::with_capacity(pairs.len());

    for code in 0..total {
        totals.graphs_visited += 1;
        edges.clear();
        let mut c = code;
        for &(u, v) in &pairs {
            match c % 3 {
                1 => edges.push((u, v, Sign::Positive)),
                2 => edges.push((u, v, Sign::Negative)),
                _ => {}
            }
            c /= 3;
        }
        let g = SignedGraph::new(n, &edges)?;
        if g.is_balanced() || !is_forbidden_free(&g, spec) {
            continue;
        }
        totals.candidates += 1;
        totals.indices_computed += 1;
        let idx = index(&g);
        if pool.accepts(idx) {
            pool.offer(switching_normal_form(&g).representative(), idx, 1);
        }
    }
    totals.classes_visited = totals.graphs_visited;
    totals.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let per_class = |g: &SignedGraph, k: u64| k >> (g.n() - g.components().len());
    Ok(SearchReport {
        schema: SCHEMA,
        mode: SearchMode::Naive,
        n,
        forbid: *spec,
        top_k,
        tolerances: tol,
        seed: None,
        restarts: None,
        excluded: Vec::new(),
        note: None,
        entries: entries_from_pool(pool, per_class),
        restart_indices: None,
        totals,
    })
}
