//! Forbidden unbalanced-triangle configurations.
//!
//! - `tc3:t`: at least `t` distinct unbalanced triangles, overlaps allowed.
//! - `book:t`: `t` unbalanced triangles on one common edge.
//! - `friendship:t`: `t` unbalanced triangles pairwise meeting only in one hub
//!   vertex, i.e. a matching of size `t` in the hub's link graph.
//! - `c3`: a single unbalanced triangle.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{above, bits, count_unbalanced_triangles_capped, unbalanced_apexes, SignedGraph};
use crate::matching::maximum_matching_size;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ForbiddenKind {
    TC3,
    Book,
    Friendship,
    C3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ForbiddenSpec {
    pub kind: ForbiddenKind,
    pub threshold: usize,
}

impl ForbiddenSpec {
    pub fn new(kind: ForbiddenKind, threshold: usize) -> Result<Self> {
        if threshold == 0 {
            return Err(Error::InvalidSpec("threshold must be at least 1".into()));
        }
        if kind == ForbiddenKind::C3 && threshold != 1 {
            return Err(Error::InvalidSpec("c3 takes no threshold".into()));
        }
        Ok(ForbiddenSpec { kind, threshold })
    }

    pub fn tc3(t: usize) -> Self {
        ForbiddenSpec::new(ForbiddenKind::TC3, t).expect("t >= 1")
    }

    pub fn book(t: usize) -> Self {
        ForbiddenSpec::new(ForbiddenKind::Book, t).expect("t >= 1")
    }

    pub fn friendship(t: usize) -> Self {
        ForbiddenSpec::new(ForbiddenKind::Friendship, t).expect("t >= 1")
    }

    pub fn c3() -> Self {
        ForbiddenSpec { kind: ForbiddenKind::C3, threshold: 1 }
    }

    /// Same test on raw masks, with early exits.
    pub(crate) fn is_free_masks(&self, adj: &[u64], neg: &[u64]) -> bool {
        let t = self.threshold;
        // Every configuration contains at least `t` unbalanced triangles.
        if count_unbalanced_triangles_capped(adj, neg, t) < t {
            return true;
        }
        self.is_free_given_count(adj, neg, t)
    }

    /// Same test when the unbalanced-triangle count is already known.
    pub(crate) fn is_free_given_count(&self, adj: &[u64], neg: &[u64], count: usize) -> bool {
        let t = self.threshold;
        if count < t {
            return true;
        }
        match self.kind {
            ForbiddenKind::TC3 | ForbiddenKind::C3 => false,
            ForbiddenKind::Book => max_book(adj, neg).1 < t,
            ForbiddenKind::Friendship => (0..adj.len()).all(|v| link_matching(adj, neg, v) < t),
        }
    }
}

impl FromStr for ForbiddenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, t) = match s.split_once(':') {
            Some((k, t)) => (k.trim(), Some(t.trim())),
            None => (s.trim(), None),
        };
        let kind = match kind.to_ascii_lowercase().as_str() {
            "tc3" => ForbiddenKind::TC3,
            "book" => ForbiddenKind::Book,
            "friendship" => ForbiddenKind::Friendship,
            "c3" => ForbiddenKind::C3,
            other => return Err(Error::InvalidSpec(format!("unknown kind `{other}` in `{s}`"))),
        };
        let threshold = match (kind, t) {
            (ForbiddenKind::C3, None) => 1,
            (_, None) => return Err(Error::InvalidSpec(format!("`{s}` needs a threshold, e.g. {s}:3"))),
            (_, Some(t)) => t.parse().map_err(|_| Error::InvalidSpec(format!("bad threshold `{t}` in `{s}`")))?,
        };
        ForbiddenSpec::new(kind, threshold)
    }
}

impl fmt::Display for ForbiddenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ForbiddenKind::TC3 => write!(f, "tc3:{}", self.threshold),
            ForbiddenKind::Book => write!(f, "book:{}", self.threshold),
            ForbiddenKind::Friendship => write!(f, "friendship:{}", self.threshold),
            ForbiddenKind::C3 => write!(f, "c3"),
        }
    }
}

impl Serialize for ForbiddenSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn count_unbalanced_triangles(g: &SignedGraph) -> usize {
    g.count_unbalanced_triangles()
}

pub fn is_forbidden_free(g: &SignedGraph, spec: &ForbiddenSpec) -> bool {
    spec.is_free_masks(g.adj_masks(), g.neg_masks())
}

/// Edge carrying the most unbalanced triangles, first in lexicographic order among ties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BookWitness {
    /// `None` only for edgeless graphs.
    pub edge: Option<(usize, usize)>,
    pub count: usize,
}

/// Vertex whose link graph has the largest matching, smallest id among ties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FriendshipWitness {
    pub vertex: usize,
    pub count: usize,
}

fn max_book(adj: &[u64], neg: &[u64]) -> (Option<(usize, usize)>, usize) {
    let mut best = (None, 0);
    for a in 0..adj.len() {
        for b in bits(adj[a] & above(a)) {
            let c = unbalanced_apexes(adj, neg, a, b, neg[a] >> b & 1 == 1).count_ones() as usize;
            if best.0.is_none() || c > best.1 {
                best = (Some((a, b)), c);
            }
        }
    }
    best
}

/// Maximum matching in the link graph of `v`: vertices `N(v)`, edges `xy`
/// whenever `vxy` is an unbalanced triangle.
fn link_matching(adj: &[u64], neg: &[u64], v: usize) -> usize {
    let mut link = vec![0u64; adj.len()];
    let mut any = false;
    for x in bits(adj[v]) {
        link[x] = unbalanced_apexes(adj, neg, v, x, neg[v] >> x & 1 == 1);
        any |= link[x] != 0;
    }
    if !any {
        return 0;
    }
    maximum_matching_size(&link)
}

pub fn book_count(g: &SignedGraph) -> BookWitness {
    let (edge, count) = max_book(g.adj_masks(), g.neg_masks());
    BookWitness { edge, count }
}

pub fn friendship_count(g: &SignedGraph) -> FriendshipWitness {
    let (adj, neg) = (g.adj_masks(), g.neg_masks());
    let mut best = FriendshipWitness { vertex: 0, count: 0 };
    for v in 0..g.n() {
        let c = link_matching(adj, neg, v);
        if c > best.count {
            best = FriendshipWitness { vertex: v, count: c };
        }
    }
    best
}
