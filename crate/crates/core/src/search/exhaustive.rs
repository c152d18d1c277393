//! Exhaustive enumeration of signature classes.
//!
//! Every labelled underlying graph is visited. Its switching classes are in
//! bijection with the sign patterns on the edges outside a fixed BFS spanning
//! forest, the forest itself being positive. The all-positive pattern is the
//! balanced class; the others are walked in Gray-code order so each step flips
//! a single edge and the unbalanced-triangle count is updated locally.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::forbidden::ForbiddenSpec;
use crate::graph::{bits, unbalanced_apexes, SignedGraph};
use crate::spectra::EigenScratch;
use crate::switching::bfs_forest;

use super::pool::ClassPool;
use super::{entries_from_pool, SearchMode, SearchReport, Tolerances, Totals, SCHEMA};

pub const MAX_EXHAUSTIVE_N: usize = 7;

/// The mask space is cut into this many contiguous jobs regardless of worker count.
const JOBS: u64 = 256;

/// Safety margin when discarding an underlying graph by an upper bound on its index.
const PRUNE_SLACK: f64 = 1e-7;

pub fn enumerate_extremal(n: usize, spec: &ForbiddenSpec, top_k: usize) -> Result<SearchReport> {
    enumerate_extremal_with(n, spec, top_k, Execution::default())
}

pub fn enumerate_extremal_with(n: usize, spec: &ForbiddenSpec, top_k: usize, exec: Execution) -> Result<SearchReport> {
    enumerate_extremal_tuned(n, spec, top_k, exec, Tolerances::default())
}

pub fn enumerate_extremal_tuned(
    n: usize,
    spec: &ForbiddenSpec,
    top_k: usize,
    exec: Execution,
    tol: Tolerances,
) -> Result<SearchReport> {
    tol.validate()?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::SizeLimit { n, limit: MAX_EXHAUSTIVE_N });
    }
    if top_k == 0 {
        return Err(Error::Range("top_k must be at least 1".into()));
    }
    let start = Instant::now();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    let jobs = JOBS.min(total);
    // Densest graphs first, so pools fill with strong classes early.
    let ranges: Vec<(u64, u64)> =
        (0..jobs).map(|c| (total - (c + 1) * total / jobs, total - c * total / jobs)).collect();

    let parts = exec.map(ranges, |(lo, hi)| scan(n, &pairs, spec, top_k, tol.class, lo, hi));

    let mut pool = ClassPool::new(top_k, MAX_EXHAUSTIVE_N, tol.class);
    let mut totals = Totals::default();
    for (p, t) in parts {
        pool.merge(p);
        totals.absorb(&t);
    }
    totals.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SearchReport {
        schema: SCHEMA,
        mode: SearchMode::Exhaustive,
        n,
        forbid: *spec,
        top_k,
        tolerances: tol,
        seed: None,
        restarts: None,
        excluded: Vec::new(),
        note: None,
        entries: entries_from_pool(pool, |_, k| k),
        restart_indices: None,
        totals,
    })
}

fn scan(
    n: usize,
    pairs: &[(usize, usize)],
    spec: &ForbiddenSpec,
    top_k: usize,
    class_tol: f64,
    lo: u64,
    hi: u64,
) -> (ClassPool, Totals) {
    let mut pool = ClassPool::new(top_k, MAX_EXHAUSTIVE_N, class_tol);
    let mut totals = Totals::default();
    let mut scratch = EigenScratch::default();
    let mut adj = vec![0u64; n];
    let mut neg = vec![0u64; n];
    let zero = vec![0u64; n];
    let mut cotree: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());

    for mask in (lo..hi).rev() {
        totals.graphs_visited += 1;
        adj.fill(0);
        neg.fill(0);
        for p in bits(mask) {
            let (u, v) = pairs[p];
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let m = mask.count_ones() as usize;
        let (parent, tree) = bfs_forest(&adj);
        let c = parent.iter().filter(|p| p.is_none()).count();
        let k = m + c - n;
        totals.classes_visited += 1 << k;
        if k == 0 {
            continue;
        }
        if let Some(th) = pool.threshold() {
            let stanley = ((1.0 + 8.0 * m as f64).sqrt() - 1.0) / 2.0;
            if stanley < th - PRUNE_SLACK || scratch.index(&adj, &zero) < th - PRUNE_SLACK {
                totals.graphs_pruned += 1;
                continue;
            }
        }
        cotree.clear();
        for u in 0..n {
            for v in bits(adj[u] & !tree[u] & !((2u64 << u) - 1)) {
                cotree.push((u, v));
            }
        }
        debug_assert_eq!(cotree.len(), k);

        let mut unbalanced = 0usize;
        for step in 1u64..(1u64 << k) {
            let (u, v) = cotree[step.trailing_zeros() as usize];
            let was_neg = neg[u] >> v & 1 == 1;
            let through = (adj[u] & adj[v]).count_ones() as usize;
            let before = unbalanced_apexes(&adj, &neg, u, v, was_neg).count_ones() as usize;
            neg[u] ^= 1 << v;
            neg[v] ^= 1 << u;
            unbalanced = unbalanced + through - 2 * before;

            if !spec.is_free_given_count(&adj, &neg, unbalanced) {
                continue;
            }
            totals.candidates += 1;
            totals.indices_computed += 1;
            let index = scratch.index(&adj, &neg);
            if pool.accepts(index) {
                pool.offer(SignedGraph::from_masks(adj.clone(), neg.clone()), index, 1);
            }
        }
    }
    (pool, totals)
}
