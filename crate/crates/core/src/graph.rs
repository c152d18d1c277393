//! The signed graph data model.
//!
//! A [`SignedGraph`] stores its underlying simple graph and its signature as two
//! arrays of 64-bit neighbourhood masks: `adj[v]` holds every neighbour of `v`,
//! `neg[v]` the neighbours joined to `v` by a negative edge. The mask layout
//! bounds graphs at [`MAX_VERTICES`] vertices and turns the triangle scans used
//! throughout the crate into a handful of word operations.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::Matrix;

pub const MAX_VERTICES: usize = 64;

/// Sign of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Negative
    }
}

/// A vertex subset to switch at.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SwitchSet {
    vertices: Vec<usize>,
}

impl SwitchSet {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        SwitchSet { vertices }
    }

    pub fn empty() -> Self {
        SwitchSet::default()
    }

    pub fn full(n: usize) -> Self {
        SwitchSet::new(0..n)
    }

    /// Interprets bit `i` of `mask` as membership of vertex `i`.
    pub fn from_mask(mask: u64) -> Self {
        SwitchSet::new((0..64).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn mask(&self, n: usize) -> Result<u64> {
        let mut m = 0u64;
        for &v in &self.vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            m |= 1 << v;
        }
        Ok(m)
    }
}

/// Bits strictly above position `v`.
#[inline]
pub(crate) fn above(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        !0u64 << (v + 1)
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Mask of the `c` with `a ~ c ~ b` whose triangle `abc` is unbalanced.
///
/// `neg_ab` is the sign bit of the edge `ab` itself.
#[inline]
pub(crate) fn unbalanced_apexes(adj: &[u64], neg: &[u64], a: usize, b: usize, neg_ab: bool) -> u64 {
    let common = adj[a] & adj[b];
    let odd = neg[a] ^ neg[b];
    if neg_ab {
        common & !odd
    } else {
        common & odd
    }
}

/// Number of unbalanced triangles of the graph described by raw masks.
pub(crate) fn count_unbalanced_triangles_masks(adj: &[u64], neg: &[u64]) -> usize {
    let mut count = 0;
    for a in 0..adj.len() {
        for b in bits(adj[a] & above(a)) {
            let neg_ab = neg[a] >> b & 1 == 1;
            count += (unbalanced_apexes(adj, neg, a, b, neg_ab) & above(b)).count_ones() as usize;
        }
    }
    count
}

/// Number of unbalanced triangles, stopping early once `limit` is reached.
pub(crate) fn count_unbalanced_triangles_capped(adj: &[u64], neg: &[u64], limit: usize) -> usize {
    let mut count = 0;
    for a in 0..adj.len() {
        for b in bits(adj[a] & above(a)) {
            let neg_ab = neg[a] >> b & 1 == 1;
            count += (unbalanced_apexes(adj, neg, a, b, neg_ab) & above(b)).count_ones() as usize;
            if count >= limit {
                return count;
            }
        }
    }
    count
}

/// Balance test on raw masks: propagate a ±1 potential component by component.
pub(crate) fn is_balanced_masks(adj: &[u64], neg: &[u64]) -> bool {
    let n = adj.len();
    let mut seen = 0u64;
    // Bit v set iff θ(v) = -1.
    let mut minus = 0u64;
    for root in 0..n {
        if seen >> root & 1 == 1 {
            continue;
        }
        seen |= 1 << root;
        let mut frontier = 1u64 << root;
        while frontier != 0 {
            let mut next = 0u64;
            for u in bits(frontier) {
                let flip = if minus >> u & 1 == 1 { !0 } else { 0 };
                // Potential each neighbour must carry: θ(u)σ(uv).
                let want_minus = (neg[u] ^ flip) & adj[u];
                let known = adj[u] & seen;
                if (minus ^ want_minus) & known != 0 {
                    return false;
                }
                let fresh = adj[u] & !seen;
                minus |= want_minus & fresh;
                seen |= fresh;
                next |= fresh;
            }
            frontier = next;
        }
    }
    true
}

/// A simple graph together with a `±1` signature on its edges.
///
/// Values are immutable after construction; every operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    n: usize,
    adj: Vec<u64>,
    neg: Vec<u64>,
}

impl SignedGraph {
    /// Builds a graph on `n` vertices from `(u, v, sign)` triples.
    pub fn new(n: usize, signed_edges: &[(usize, usize, Sign)]) -> Result<Self> {
        let mut g = SignedGraph::empty(n)?;
        for &(u, v, s) in signed_edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.insert(u, v, s);
        }
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(SignedGraph { n, adj: vec![0; n], neg: vec![0; n] })
    }

    /// Builds a graph from raw masks. Masks must be symmetric, loop-free,
    /// and `neg[v]` must be a subset of `adj[v]`.
    pub(crate) fn from_masks(adj: Vec<u64>, neg: Vec<u64>) -> Self {
        debug_assert_eq!(adj.len(), neg.len());
        debug_assert!((0..adj.len()).all(|v| adj[v] >> v & 1 == 0 && neg[v] & !adj[v] == 0));
        SignedGraph { n: adj.len(), adj, neg }
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize, s: Sign) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        if s.is_negative() {
            self.neg[u] |= 1 << v;
            self.neg[v] |= 1 << u;
        } else {
            self.neg[u] &= !(1 << v);
            self.neg[v] &= !(1 << u);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        if !self.has_edge(u, v) {
            None
        } else if self.neg[u] >> v & 1 == 1 {
            Some(Sign::Negative)
        } else {
            Some(Sign::Positive)
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.adj[v])
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub(crate) fn adj_masks(&self) -> &[u64] {
        &self.adj
    }

    pub(crate) fn neg_masks(&self) -> &[u64] {
        &self.neg
    }

    /// Edges as `(u, v, sign)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, Sign)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in bits(self.adj[u] & above(u)) {
                let s = if self.neg[u] >> v & 1 == 1 { Sign::Negative } else { Sign::Positive };
                out.push((u, v, s));
            }
        }
        out
    }

    pub fn negative_edge_count(&self) -> usize {
        self.neg.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Same vertex count and same underlying edge set.
    pub fn same_underlying(&self, other: &SignedGraph) -> bool {
        self.n == other.n && self.adj == other.adj
    }

    /// Signed adjacency matrix: `a[u][v] = σ(uv)` on edges, 0 elsewhere.
    pub fn adjacency(&self) -> Matrix<i64> {
        let mut a = Matrix::zeros(self.n, self.n);
        for (u, v, s) in self.edges() {
            a[(u, v)] = s.value();
            a[(v, u)] = s.value();
        }
        a
    }

    /// Adjacency matrix of the underlying unsigned graph.
    pub fn underlying_adjacency(&self) -> Matrix<i64> {
        let mut a = Matrix::zeros(self.n, self.n);
        for (u, v, _) in self.edges() {
            a[(u, v)] = 1;
            a[(v, u)] = 1;
        }
        a
    }

    /// Flips the sign of every edge with exactly one endpoint in `set`.
    pub fn switch(&self, set: &SwitchSet) -> Result<SignedGraph> {
        let s = set.mask(self.n)?;
        let neg = (0..self.n)
            .map(|v| {
                let across = if s >> v & 1 == 1 { !s } else { s };
                self.neg[v] ^ (self.adj[v] & across)
            })
            .collect();
        Ok(SignedGraph { n: self.n, adj: self.adj.clone(), neg })
    }

    /// Applies the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SignedGraph> {
        if perm.len() != self.n {
            return Err(Error::Range(format!("permutation of length {} for n = {}", perm.len(), self.n)));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n {
                return Err(Error::VertexOutOfRange { vertex: p, n: self.n });
            }
            if seen >> p & 1 == 1 {
                return Err(Error::RepeatedVertex(p));
            }
            seen |= 1 << p;
        }
        let mut g = SignedGraph::empty(self.n)?;
        for (u, v, s) in self.edges() {
            g.insert(perm[u], perm[v], s);
        }
        Ok(g)
    }

    /// Vertex potential `θ` with `σ(uv) = θ(u)θ(v)` on every edge, if one exists.
    pub fn balancing_potential(&self) -> Option<Vec<Sign>> {
        let mut theta: Vec<Option<Sign>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if theta[root].is_some() {
                continue;
            }
            theta[root] = Some(Sign::Positive);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let tu = theta[u].unwrap();
                for v in self.neighbors(u) {
                    let want = tu * self.sign(u, v).unwrap();
                    match theta[v] {
                        None => {
                            theta[v] = Some(want);
                            queue.push_back(v);
                        }
                        Some(tv) if tv != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(theta.into_iter().map(Option::unwrap).collect())
    }

    /// True iff the graph has no negative cycle.
    pub fn is_balanced(&self) -> bool {
        self.balancing_potential().is_some()
    }

    /// Product of the edge signs along a cycle given by its vertex sequence.
    ///
    /// The closing edge back to the first vertex is implied; a trailing repeat
    /// of the first vertex is accepted and ignored.
    pub fn cycle_sign(&self, cycle: &[usize]) -> Result<Sign> {
        let cycle = match cycle {
            [first, .., last] if cycle.len() > 1 && first == last => &cycle[..cycle.len() - 1],
            _ => cycle,
        };
        if cycle.len() < 3 {
            return Err(Error::CycleTooShort(cycle.len()));
        }
        let mut seen = 0u64;
        for &v in cycle {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            if seen >> v & 1 == 1 {
                return Err(Error::RepeatedVertex(v));
            }
            seen |= 1 << v;
        }
        let mut sign = Sign::Positive;
        for i in 0..cycle.len() {
            let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            sign = sign * self.sign(u, v).ok_or(Error::NotAnEdge(u, v))?;
        }
        Ok(sign)
    }

    /// All vertex triples `a < b < c` spanning a negative triangle, in lexicographic order.
    pub fn unbalanced_triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in bits(self.adj[a] & above(a)) {
                let neg_ab = self.neg[a] >> b & 1 == 1;
                for c in bits(unbalanced_apexes(&self.adj, &self.neg, a, b, neg_ab) & above(b)) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    pub fn count_unbalanced_triangles(&self) -> usize {
        count_unbalanced_triangles_masks(&self.adj, &self.neg)
    }

    /// Number of unbalanced triangles through each vertex.
    pub fn unbalanced_triangle_incidence(&self) -> Vec<usize> {
        let mut inc = vec![0; self.n];
        for [a, b, c] in self.unbalanced_triangles() {
            inc[a] += 1;
            inc[b] += 1;
            inc[c] += 1;
        }
        inc
    }

    /// Connected components as vertex lists, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen >> root & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << root;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(bits(comp).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

impl fmt::Debug for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedGraph(n={}, [", self.n)?;
        for (i, (u, v, s)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}{}{v}", s.symbol())?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Negative as N, Positive as P};

    fn triangle(signs: [Sign; 3]) -> SignedGraph {
        SignedGraph::new(3, &[(0, 1, signs[0]), (1, 2, signs[1]), (0, 2, signs[2])]).unwrap()
    }

    fn complete(n: usize) -> SignedGraph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, P))).collect();
        SignedGraph::new(n, &edges).unwrap()
    }

    #[test]
    fn construction_and_queries() {
        let g = triangle([N, P, P]);
        assert_eq!(g.m(), 3);
        assert_eq!(g.sign(1, 0), Some(N));
        assert_eq!(g.degree(2), 2);
        assert_eq!(g.adjacency()[(0, 1)], -1);
        assert_eq!(g.adjacency()[(1, 0)], -1);
        assert_eq!(g.adjacency()[(0, 2)], 1);
    }

    #[test]
    fn construction_errors_name_the_edge() {
        assert!(matches!(SignedGraph::new(2, &[(0, 0, P)]), Err(Error::SelfLoop(0))));
        assert!(matches!(SignedGraph::new(3, &[(0, 1, P), (1, 0, N)]), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(SignedGraph::new(3, &[(0, 3, P)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 })));
        assert!(matches!(SignedGraph::new(0, &[]), Err(Error::EmptyGraph)));
        assert!(matches!(SignedGraph::new(65, &[]), Err(Error::TooManyVertices { .. })));
    }

    #[test]
    fn empty_graph_is_balanced() {
        let g = SignedGraph::new(4, &[]).unwrap();
        assert_eq!(g.m(), 0);
        assert!(g.is_balanced());
    }

    #[test]
    fn switching_identities() {
        let g = triangle([N, P, P]);
        assert_eq!(g.switch(&SwitchSet::empty()).unwrap(), g);
        assert_eq!(g.switch(&SwitchSet::full(3)).unwrap(), g);
        let h = g.switch(&SwitchSet::new([2])).unwrap();
        assert_eq!(h.sign(0, 1), Some(N));
        assert_eq!(h.sign(1, 2), Some(N));
        assert_eq!(h.sign(0, 2), Some(N));
        assert_eq!(h.cycle_sign(&[0, 1, 2]).unwrap(), N);
        assert_eq!(h.unbalanced_triangles().len(), 1);
        assert!(g.switch(&SwitchSet::new([3])).is_err());
    }

    #[test]
    fn balance() {
        assert!(complete(6).is_balanced());
        assert!(!triangle([N, N, N]).is_balanced());
        let path = SignedGraph::new(4, &[(0, 1, P), (1, 2, N), (2, 3, P)]).unwrap();
        assert!(path.is_balanced());
        let theta = path.balancing_potential().unwrap();
        for (u, v, s) in path.edges() {
            assert_eq!(theta[u] * theta[v], s);
        }
    }

    #[test]
    fn cycle_signs() {
        assert_eq!(triangle([N, P, P]).cycle_sign(&[0, 1, 2]).unwrap(), N);
        assert_eq!(triangle([N, N, P]).cycle_sign(&[0, 1, 2, 0]).unwrap(), P);
        let c4 = SignedGraph::new(4, &[(0, 1, P), (1, 2, P), (2, 3, P), (0, 3, P)]).unwrap();
        assert_eq!(c4.cycle_sign(&[0, 1, 2, 3]).unwrap(), P);
        assert!(matches!(c4.cycle_sign(&[0, 1, 3, 2]), Err(Error::NotAnEdge(1, 3))));
        assert!(matches!(c4.cycle_sign(&[0, 1, 2, 1]), Err(Error::RepeatedVertex(1))));
        assert!(matches!(c4.cycle_sign(&[0, 1]), Err(Error::CycleTooShort(2))));
    }

    #[test]
    fn unbalanced_triangle_scan() {
        assert!(complete(5).unbalanced_triangles().is_empty());
        let mut k6 = complete(6);
        k6.insert(2, 4, N);
        let tris = k6.unbalanced_triangles();
        assert_eq!(tris, vec![[0, 2, 4], [1, 2, 4], [2, 3, 4], [2, 4, 5]]);
        assert_eq!(k6.count_unbalanced_triangles(), 4);
        assert_eq!(count_unbalanced_triangles_capped(k6.adj_masks(), k6.neg_masks(), 2), 2);
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = triangle([N, P, P]);
        let h = g.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(h.sign(2, 0), Some(N));
        assert_eq!(h.m(), 3);
        assert!(g.relabel(&[0, 0, 1]).is_err());
    }

    #[test]
    fn components_of_disconnected_graph() {
        let g = SignedGraph::new(5, &[(0, 3, P), (1, 2, N)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 3], vec![1, 2], vec![4]]);
        assert!(!g.is_connected());
    }
}
