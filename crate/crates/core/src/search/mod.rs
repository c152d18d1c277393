//! Extremal search over unbalanced signed graphs avoiding a forbidden configuration.

mod classify;
mod exhaustive;
mod local;
mod naive;
mod pool;

use std::fmt::Write as _;

use serde::Serialize;

use crate::forbidden::ForbiddenSpec;
use crate::graph::SignedGraph;
use crate::io::to_sg;
use crate::spectra::EigenScratch;

pub use classify::{classify, classify_with_limit, ClassificationTag};
pub use exhaustive::{enumerate_extremal, enumerate_extremal_tuned, enumerate_extremal_with, MAX_EXHAUSTIVE_N};
pub use local::{local_search, LocalSearchConfig, MAX_LOCAL_N};
pub use naive::{enumerate_naive, enumerate_naive_tuned, MAX_NAIVE_N};
pub use pool::CLASS_TOL;

use pool::ClassPool;

pub const SCHEMA: &str = "sgx/1";

/// Minimum improvement for a local-search move to count.
pub const IMPROVE_TOL: f64 = 1e-10;

/// Numeric tolerances used by the search modes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Index agreement within a class and tie width at the top-k cut.
    pub class: f64,
    /// Minimum gain for a local-search move.
    pub improve: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { class: CLASS_TOL, improve: IMPROVE_TOL }
    }
}

impl Tolerances {
    pub(crate) fn validate(&self) -> crate::error::Result<()> {
        for (name, v) in [("class", self.class), ("improve", self.improve)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(crate::error::Error::Range(format!(
                    "{name} tolerance must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Naive,
    Local,
}

/// One switching-isomorphism class in a report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    pub rank: usize,
    pub index: f64,
    pub spectral_radius: f64,
    pub unbalanced_triangles: usize,
    pub m: usize,
    pub tag: ClassificationTag,
    /// Exhaustive modes: labelled switching classes found in this class.
    /// Local mode: restarts that ended in this class.
    pub multiplicity: u64,
    /// Largest index deviation observed between members of the class.
    pub index_spread: f64,
    /// `.sg` text of the representative.
    pub graph: String,
    #[serde(skip)]
    pub representative: SignedGraph,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Totals {
    pub graphs_visited: u64,
    pub graphs_pruned: u64,
    pub classes_visited: u64,
    pub candidates: u64,
    pub indices_computed: u64,
    pub wall_time_ms: f64,
}

impl Totals {
    fn absorb(&mut self, o: &Totals) {
        self.graphs_visited += o.graphs_visited;
        self.graphs_pruned += o.graphs_pruned;
        self.classes_visited += o.classes_visited;
        self.candidates += o.candidates;
        self.indices_computed += o.indices_computed;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub schema: &'static str,
    pub mode: SearchMode,
    pub n: usize,
    pub forbid: ForbiddenSpec,
    pub top_k: usize,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub entries: Vec<ReportEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restart_indices: Option<Vec<f64>>,
    pub totals: Totals,
}

impl SearchReport {
    pub fn best(&self) -> Option<&ReportEntry> {
        self.entries.first()
    }

    /// Entries tied with the best within [`CLASS_TOL`].
    pub fn top_ties(&self) -> &[ReportEntry] {
        let Some(best) = self.best() else { return &[] };
        let k = self.entries.iter().take_while(|e| best.index - e.index <= CLASS_TOL).count();
        &self.entries[..k]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// JSON with the wall time zeroed, for comparing runs byte for byte.
    pub fn to_canonical_json(&self) -> String {
        let mut r = self.clone();
        r.totals.wall_time_ms = 0.0;
        r.to_json()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode {:?}  n = {}  forbid {}  top {}", self.mode, self.n, self.forbid, self.top_k);
        if let (Some(seed), Some(r)) = (self.seed, self.restarts) {
            let _ = writeln!(out, "seed {seed}  restarts {r}");
        }
        if !self.excluded.is_empty() {
            let _ = writeln!(out, "excluded {}", self.excluded.join(" "));
        }
        if let Some(note) = &self.note {
            let _ = writeln!(out, "note: {note}");
        }
        let _ = writeln!(
            out,
            "{:>4}  {:>12}  {:>12}  {:>4}  {:>4}  {:>12}  tag",
            "rank", "index", "radius", "ut", "m", "mult"
        );
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{:>4}  {:>12.9}  {:>12.9}  {:>4}  {:>4}  {:>12}  {}",
                e.rank, e.index, e.spectral_radius, e.unbalanced_triangles, e.m, e.multiplicity, e.tag
            );
        }
        let t = &self.totals;
        let _ = writeln!(
            out,
            "graphs {} (pruned {})  classes {}  candidates {}  indices {}  {:.1} ms",
            t.graphs_visited, t.graphs_pruned, t.classes_visited, t.candidates, t.indices_computed, t.wall_time_ms
        );
        out
    }
}

fn classify_for_report(g: &SignedGraph) -> ClassificationTag {
    classify_with_limit(g, 12).unwrap_or(ClassificationTag::Other)
}

fn entries_from_pool(pool: ClassPool, scale: impl Fn(&SignedGraph, u64) -> u64) -> Vec<ReportEntry> {
    let mut scratch = EigenScratch::default();
    pool.classes
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let (hi, lo) = scratch.extremes(c.graph.adj_masks(), c.graph.neg_masks());
            ReportEntry {
                rank: i + 1,
                index: c.index,
                spectral_radius: hi.abs().max(lo.abs()),
                unbalanced_triangles: c.invariants.unbalanced_triangles,
                m: c.invariants.m,
                tag: classify_for_report(&c.graph),
                multiplicity: scale(&c.graph, c.multiplicity),
                index_spread: c.spread,
                graph: to_sg(&c.graph),
                representative: c.graph,
            }
        })
        .collect()
}
