//! Seeded steepest-ascent hill climbing with random restarts.
//!
//! Restart `r` draws from a ChaCha8 stream keyed by `(seed, r)`, so each restart
//! is reproducible on its own and the report does not depend on how restarts
//! are spread over workers.

use std::time::Instant;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::families::gamma;
use crate::forbidden::ForbiddenSpec;
use crate::graph::{above, bits, full_mask, is_balanced_masks, unbalanced_apexes, Sign, SignedGraph, MAX_VERTICES};
use crate::iso::{is_switching_isomorphic_with_limit, IsoInvariants};
use crate::spectra::EigenScratch;

use super::pool::ClassPool;
use super::{entries_from_pool, SearchMode, SearchReport, Tolerances, Totals, SCHEMA};

pub const MAX_LOCAL_N: usize = MAX_VERTICES;
pub const MAX_RESTARTS: usize = 1_000_000;

const START_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug)]
pub struct LocalSearchConfig {
    pub n: usize,
    pub spec: ForbiddenSpec,
    pub seed: u64,
    pub restarts: usize,
    /// Classes never accepted as incumbents.
    pub exclude: Vec<SignedGraph>,
    pub top_k: usize,
    /// Cap on accepted moves per restart.
    pub max_steps: usize,
    pub exec: Execution,
    pub tolerances: Tolerances,
}

impl LocalSearchConfig {
    pub fn new(n: usize, spec: ForbiddenSpec, seed: u64, restarts: usize) -> Self {
        LocalSearchConfig {
            n,
            spec,
            seed,
            restarts,
            exclude: Vec::new(),
            top_k: 5,
            max_steps: 10_000,
            exec: Execution::default(),
            tolerances: Tolerances::default(),
        }
    }

    pub fn exclude(mut self, graphs: impl IntoIterator<Item = SignedGraph>) -> Self {
        self.exclude.extend(graphs);
        self
    }

    pub fn top_k(mut self, k: usize) -> Self {
        self.top_k = k;
        self
    }

    pub fn execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn tolerances(mut self, tol: Tolerances) -> Self {
        self.tolerances = tol;
        self
    }
}

struct Excluded {
    graph: SignedGraph,
    invariants: IsoInvariants,
    index: f64,
}

struct Exclusions {
    classes: Vec<Excluded>,
    tol: f64,
}

struct Outcome {
    graph: SignedGraph,
    index: f64,
    totals: Totals,
}

pub fn local_search(cfg: &LocalSearchConfig) -> Result<SearchReport> {
    let n = cfg.n;
    if !(3..=MAX_LOCAL_N).contains(&n) {
        return Err(Error::Range(format!("local search needs 3 <= n <= {MAX_LOCAL_N}, got {n}")));
    }
    if cfg.restarts == 0 || cfg.restarts > MAX_RESTARTS {
        return Err(Error::Range(format!("restarts must be in 1..={MAX_RESTARTS}, got {}", cfg.restarts)));
    }
    if cfg.top_k == 0 {
        return Err(Error::Range("top_k must be at least 1".into()));
    }
    cfg.tolerances.validate()?;
    if let Some(g) = cfg.exclude.iter().find(|g| g.n() != n) {
        return Err(Error::Range(format!("excluded graph has {} vertices, search has {n}", g.n())));
    }
    let start = Instant::now();
    let mut scratch = EigenScratch::default();
    let classes: Vec<Excluded> = cfg
        .exclude
        .iter()
        .map(|g| Excluded {
            graph: g.clone(),
            invariants: IsoInvariants::of(g),
            index: scratch.index(g.adj_masks(), g.neg_masks()),
        })
        .collect();
    let excluded = Exclusions { classes, tol: cfg.tolerances.class };

    let outcomes = cfg.exec.map((0..cfg.restarts as u64).collect(), |r| climb(cfg, &excluded, r));

    let mut pool = ClassPool::new(cfg.top_k, n, cfg.tolerances.class);
    let mut totals = Totals::default();
    let mut restart_indices = Vec::with_capacity(cfg.restarts);
    for o in outcomes {
        let o = o?;
        totals.absorb(&o.totals);
        restart_indices.push(o.index);
        pool.offer(o.graph, o.index, 1);
    }
    totals.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    Ok(SearchReport {
        schema: SCHEMA,
        mode: SearchMode::Local,
        n,
        forbid: cfg.spec,
        top_k: cfg.top_k,
        tolerances: cfg.tolerances,
        seed: Some(cfg.seed),
        restarts: Some(cfg.restarts),
        excluded: excluded.classes.iter().map(|e| super::classify_for_report(&e.graph).to_string()).collect(),
        note: Some("evidence, not proof: no counterexample found under this budget".into()),
        entries: entries_from_pool(pool, |_, k| k),
        restart_indices: Some(restart_indices),
        totals,
    })
}

impl Exclusions {
    fn contains(&self, g: &SignedGraph, index: f64) -> bool {
        if self.classes.is_empty() {
            return false;
        }
        let mut inv = None;
        self.classes.iter().any(|e| {
            (e.index - index).abs() <= self.tol
                && *inv.get_or_insert_with(|| IsoInvariants::of(g)) == e.invariants
                && is_switching_isomorphic_with_limit(&e.graph, g, g.n()).unwrap_or(false)
        })
    }
}

#[derive(Clone, Copy)]
enum Move {
    Add { u: usize, v: usize, negative: bool },
    Delete { u: usize, v: usize },
    Flip { u: usize, v: usize },
}

fn apply(adj: &mut [u64], neg: &mut [u64], mv: Move) {
    match mv {
        Move::Add { u, v, negative } => {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            if negative {
                neg[u] |= 1 << v;
                neg[v] |= 1 << u;
            }
        }
        Move::Delete { u, v } => {
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
            neg[u] &= !(1 << v);
            neg[v] &= !(1 << u);
        }
        Move::Flip { u, v } => {
            neg[u] ^= 1 << v;
            neg[v] ^= 1 << u;
        }
    }
}

fn climb(cfg: &LocalSearchConfig, excluded: &Exclusions, restart: u64) -> Result<Outcome> {
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart);
    let mut scratch = EigenScratch::default();
    let mut totals = Totals { classes_visited: 1, ..Totals::default() };

    let g = random_start(n, &cfg.spec, &mut rng, excluded, &mut scratch)?;
    let mut adj = g.adj_masks().to_vec();
    let mut neg = g.neg_masks().to_vec();
    let mut cur = scratch.index(&adj, &neg);
    totals.indices_computed += 1;

    let mut improving: Vec<(f64, Move)> = Vec::new();
    for _ in 0..cfg.max_steps {
        improving.clear();
        for u in 0..n {
            for v in bits(above(u) & full_mask(n)) {
                let moves: &[Move] = if adj[u] >> v & 1 == 1 {
                    &[Move::Delete { u, v }, Move::Flip { u, v }]
                } else {
                    &[Move::Add { u, v, negative: false }, Move::Add { u, v, negative: true }]
                };
                for &mv in moves {
                    totals.graphs_visited += 1;
                    let (au, av, nu, nv) = (adj[u], adj[v], neg[u], neg[v]);
                    apply(&mut adj, &mut neg, mv);
                    if cfg.spec.is_free_masks(&adj, &neg) && !is_balanced_masks(&adj, &neg) {
                        totals.candidates += 1;
                        totals.indices_computed += 1;
                        let idx = scratch.index(&adj, &neg);
                        if idx > cur + cfg.tolerances.improve {
                            improving.push((idx, mv));
                        }
                    }
                    (adj[u], adj[v], neg[u], neg[v]) = (au, av, nu, nv);
                }
            }
        }
        // Steepest first; equal values keep move order.
        improving.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut moved = false;
        for &(idx, mv) in &improving {
            let (au, av, nu, nv, u, v) = match mv {
                Move::Add { u, v, .. } | Move::Delete { u, v } | Move::Flip { u, v } => {
                    (adj[u], adj[v], neg[u], neg[v], u, v)
                }
            };
            apply(&mut adj, &mut neg, mv);
            let g = SignedGraph::from_masks(adj.clone(), neg.clone());
            if excluded.contains(&g, idx) {
                (adj[u], adj[v], neg[u], neg[v]) = (au, av, nu, nv);
                continue;
            }
            cur = idx;
            moved = true;
            break;
        }
        if !moved {
            break;
        }
    }
    Ok(Outcome { graph: SignedGraph::from_masks(adj, neg), index: cur, totals })
}

/// Random spec-free unbalanced graph that is not excluded.
fn random_start(
    n: usize,
    spec: &ForbiddenSpec,
    rng: &mut ChaCha8Rng,
    excluded: &Exclusions,
    scratch: &mut EigenScratch,
) -> Result<SignedGraph> {
    for _ in 0..START_ATTEMPTS {
        let p: f64 = rng.random_range(0.2..=1.0);
        let q: f64 = rng.random_range(0.0..=0.5);
        let mut adj = vec![0u64; n];
        let mut neg = vec![0u64; n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    let negative = rng.random_bool(q);
                    apply(&mut adj, &mut neg, Move::Add { u, v, negative });
                }
            }
        }
        // Break random unbalanced triangles until the configuration is gone.
        while !spec.is_free_masks(&adj, &neg) {
            let tris = unbalanced_triangle_list(&adj, &neg);
            let &[a, b, c] = tris.choose(rng).expect("a non-free graph has an unbalanced triangle");
            let (u, v) = *[(a, b), (a, c), (b, c)].choose(rng).unwrap();
            apply(&mut adj, &mut neg, Move::Delete { u, v });
        }
        if is_balanced_masks(&adj, &neg) {
            continue;
        }
        let g = SignedGraph::from_masks(adj, neg);
        let idx = scratch.index(g.adj_masks(), g.neg_masks());
        if !excluded.contains(&g, idx) {
            return Ok(g);
        }
    }
    fallback_start(n, spec, rng, excluded, scratch)
}

fn fallback_start(
    n: usize,
    spec: &ForbiddenSpec,
    rng: &mut ChaCha8Rng,
    excluded: &Exclusions,
    scratch: &mut EigenScratch,
) -> Result<SignedGraph> {
    let mut options = Vec::new();
    if n >= 4 {
        options.push(gamma(n, 3)?);
        let cycle: Vec<_> =
            (0..n).map(|i| (i, (i + 1) % n, if i == 0 { Sign::Negative } else { Sign::Positive })).collect();
        options.push(SignedGraph::new(n, &cycle)?);
    }
    for g in options {
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
        let g = g.relabel(&perm)?;
        let idx = scratch.index(g.adj_masks(), g.neg_masks());
        if spec.is_free_masks(g.adj_masks(), g.neg_masks()) && !excluded.contains(&g, idx) {
            return Ok(g);
        }
    }
    Err(Error::Range(format!("no {spec}-free unbalanced start found on {n} vertices")))
}

fn unbalanced_triangle_list(adj: &[u64], neg: &[u64]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..adj.len() {
        for b in bits(adj[a] & above(a)) {
            for c in bits(unbalanced_apexes(adj, neg, a, b, neg[a] >> b & 1 == 1) & above(b)) {
                out.push([a, b, c]);
            }
        }
    }
    out
}
