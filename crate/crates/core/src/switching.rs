//! Canonical switching representatives on a fixed labelling.
//!
//! Every component gets a BFS tree rooted at its smallest vertex, neighbours
//! visited in increasing order. Switching so that all tree edges are positive
//! leaves one sign per non-tree edge; those residual signs are exactly the
//! signs of the fundamental cycles, so two signatures on the same underlying
//! graph are switching equivalent iff their residuals coincide.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bits, Sign, SignedGraph, SwitchSet};

/// BFS spanning forest of the graph given by `adj` masks.
///
/// Returns the parent of every vertex (`None` for roots) and the tree edges
/// as masks, symmetric like `adj`.
pub(crate) fn bfs_forest(adj: &[u64]) -> (Vec<Option<usize>>, Vec<u64>) {
    let n = adj.len();
    let mut parent = vec![None; n];
    let mut tree = vec![0u64; n];
    let mut seen = 0u64;
    let mut queue = Vec::with_capacity(n);
    for root in 0..n {
        if seen >> root & 1 == 1 {
            continue;
        }
        seen |= 1 << root;
        queue.clear();
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for v in bits(adj[u] & !seen) {
                seen |= 1 << v;
                parent[v] = Some(u);
                tree[u] |= 1 << v;
                tree[v] |= 1 << u;
                queue.push(v);
            }
        }
    }
    (parent, tree)
}

/// Switching-canonical description of a signed graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    /// Smallest vertex of the component containing each vertex.
    pub component_roots: Vec<usize>,
    /// Tree edges `(parent, child)` sorted by child. All positive after normalisation.
    pub forest: Vec<(usize, usize)>,
    /// Non-tree edges `(u, v)` with `u < v`, lexicographic, with their residual sign.
    pub residual: Vec<(usize, usize, Sign)>,
}

impl NormalForm {
    /// True iff every residual sign is positive, i.e. the graph is balanced.
    pub fn is_all_positive(&self) -> bool {
        self.residual.iter().all(|&(_, _, s)| s == Sign::Positive)
    }

    /// The representative: tree edges positive, residual signs as recorded.
    pub fn representative(&self) -> SignedGraph {
        let n = self.component_roots.len();
        let mut g = SignedGraph::empty(n).expect("normal form of a valid graph");
        for &(p, c) in &self.forest {
            g.insert(p, c, Sign::Positive);
        }
        for &(u, v, s) in &self.residual {
            g.insert(u, v, s);
        }
        g
    }
}

/// Potential `θ` that makes every BFS-forest edge positive after switching.
fn forest_potential(g: &SignedGraph, parent: &[Option<usize>]) -> Vec<Sign> {
    // BFS order guarantees parents are resolved before children when we walk
    // the chain to the root; memoise to keep this linear.
    let n = g.n();
    let mut theta: Vec<Option<Sign>> = vec![None; n];
    for v in 0..n {
        let mut chain = Vec::new();
        let mut x = v;
        while theta[x].is_none() {
            match parent[x] {
                None => {
                    theta[x] = Some(Sign::Positive);
                }
                Some(p) => {
                    chain.push(x);
                    x = p;
                }
            }
        }
        while let Some(c) = chain.pop() {
            let p = parent[c].unwrap();
            theta[c] = Some(theta[p].unwrap() * g.sign(p, c).unwrap());
        }
    }
    theta.into_iter().map(Option::unwrap).collect()
}

/// The switch set `U` for which `switch(g, U)` is the normal-form representative.
pub fn normalizing_switch(g: &SignedGraph) -> SwitchSet {
    let (parent, _) = bfs_forest(g.adj_masks());
    let theta = forest_potential(g, &parent);
    SwitchSet::new((0..g.n()).filter(|&v| theta[v] == Sign::Negative))
}

pub fn switching_normal_form(g: &SignedGraph) -> NormalForm {
    let (parent, tree) = bfs_forest(g.adj_masks());
    let theta = forest_potential(g, &parent);
    let component_roots: Vec<usize> = (0..g.n())
        .map(|v| {
            let mut r = v;
            while let Some(p) = parent[r] {
                r = p;
            }
            r
        })
        .collect();
    let mut forest: Vec<(usize, usize)> = (0..g.n()).filter_map(|c| parent[c].map(|p| (p, c))).collect();
    forest.sort_by_key(|&(_, c)| c);
    let residual = g
        .edges()
        .into_iter()
        .filter(|&(u, v, _)| tree[u] >> v & 1 == 0)
        .map(|(u, v, s)| (u, v, s * theta[u] * theta[v]))
        .collect();
    NormalForm { component_roots, forest, residual }
}

/// Switching equivalence on a fixed labelling. Both graphs must share their underlying graph.
pub fn is_switching_equivalent(g: &SignedGraph, h: &SignedGraph) -> Result<bool> {
    if !g.same_underlying(h) {
        return Err(Error::UnderlyingGraphsDiffer);
    }
    Ok(switching_normal_form(g) == switching_normal_form(h))
}
