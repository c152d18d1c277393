//! Switching isomorphism by pruned backtracking.
//!
//! Vertices of the first graph are mapped in BFS order, so every non-root
//! vertex already has a mapped neighbour when it is placed. That neighbour fixes
//! the switching potential of the new vertex, and all other mapped neighbours
//! must agree with it. Candidates are further pruned by degree and by the
//! number of unbalanced triangles through the vertex, both switching invariants.

use crate::error::{Error, Result};
use crate::graph::{bits, Sign, SignedGraph};

/// Default vertex-count limit for the public isomorphism entry points.
pub const DEFAULT_ISO_LIMIT: usize = 10;

/// A relabelling `perm` plus switch potential `theta` with
/// `relabel(switch(g, {v : theta[v] = -}), perm) == h`, with `theta` indexed by the vertices of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingIsomorphism {
    pub perm: Vec<usize>,
    pub theta: Vec<Sign>,
}

/// Cheap invariants that must agree for switching-isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoInvariants {
    pub n: usize,
    pub m: usize,
    pub unbalanced_triangles: usize,
    /// Sorted multiset of `(degree, unbalanced triangles through the vertex)`.
    pub vertex_profile: Vec<(usize, usize)>,
}

impl IsoInvariants {
    pub fn of(g: &SignedGraph) -> Self {
        let keys = vertex_keys(g);
        let unbalanced_triangles = keys.iter().map(|k| k.1).sum::<usize>() / 3;
        let mut vertex_profile = keys;
        vertex_profile.sort_unstable();
        IsoInvariants { n: g.n(), m: g.m(), unbalanced_triangles, vertex_profile }
    }
}

fn vertex_keys(g: &SignedGraph) -> Vec<(usize, usize)> {
    let inc = g.unbalanced_triangle_incidence();
    (0..g.n()).map(|v| (g.degree(v), inc[v])).collect()
}

pub fn is_switching_isomorphic(g: &SignedGraph, h: &SignedGraph) -> Result<bool> {
    is_switching_isomorphic_with_limit(g, h, DEFAULT_ISO_LIMIT)
}

pub fn is_switching_isomorphic_with_limit(g: &SignedGraph, h: &SignedGraph, limit: usize) -> Result<bool> {
    Ok(find_switching_isomorphism(g, h, limit)?.is_some())
}

/// Searches for a switching isomorphism from `g` onto `h`.
///
/// Graphs of different order are simply not isomorphic; graphs larger than
/// `limit` are refused.
pub fn find_switching_isomorphism(
    g: &SignedGraph,
    h: &SignedGraph,
    limit: usize,
) -> Result<Option<SwitchingIsomorphism>> {
    if g.n() != h.n() {
        return Ok(None);
    }
    if g.n() > limit {
        return Err(Error::SizeLimit { n: g.n(), limit });
    }
    let kg = vertex_keys(g);
    let kh = vertex_keys(h);
    if g.m() != h.m() {
        return Ok(None);
    }
    let (mut sg, mut sh) = (kg.clone(), kh.clone());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(None);
    }

    let order = search_order(g, &kg);
    let mut state = Backtrack {
        g,
        h,
        kg: &kg,
        kh: &kh,
        order: &order,
        map: vec![usize::MAX; g.n()],
        theta_g: vec![Sign::Positive; g.n()],
        mapped_g: 0,
        mapped_h: 0,
    };
    if state.extend(0) {
        // theta_g is a potential on g's vertices; report it in g's labelling.
        Ok(Some(SwitchingIsomorphism { perm: state.map, theta: state.theta_g }))
    } else {
        Ok(None)
    }
}

/// BFS order over each component, starting from the vertex whose invariant
/// class is rarest, neighbours taken rarest class first.
fn search_order(g: &SignedGraph, keys: &[(usize, usize)]) -> Vec<usize> {
    let n = g.n();
    let class_size = |v: usize| keys.iter().filter(|&&k| k == keys[v]).count();
    let sizes: Vec<usize> = (0..n).map(class_size).collect();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let root = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .min_by_key(|&v| (sizes[v], std::cmp::Reverse(g.degree(v)), v))
            .unwrap();
        placed |= 1 << root;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let mut next: Vec<usize> = bits(g.adj_masks()[u] & !placed).collect();
            next.sort_by_key(|&v| (sizes[v], v));
            for v in next {
                placed |= 1 << v;
                order.push(v);
            }
        }
    }
    order
}

struct Backtrack<'a> {
    g: &'a SignedGraph,
    h: &'a SignedGraph,
    kg: &'a [(usize, usize)],
    kh: &'a [(usize, usize)],
    order: &'a [usize],
    map: Vec<usize>,
    theta_g: Vec<Sign>,
    mapped_g: u64,
    mapped_h: u64,
}

impl Backtrack<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let (gadj, gneg) = (self.g.adj_masks(), self.g.neg_masks());
        let (hadj, hneg) = (self.h.adj_masks(), self.h.neg_masks());

        // Images of x's mapped neighbours, and which of those edges must come
        // out negative in h when theta(x) = +.
        let mut images = 0u64;
        let mut expect_neg = 0u64;
        for a in bits(gadj[x] & self.mapped_g) {
            let img = 1u64 << self.map[a];
            images |= img;
            let s = self.theta_g[a] * if gneg[x] >> a & 1 == 1 { Sign::Negative } else { Sign::Positive };
            if s == Sign::Negative {
                expect_neg |= img;
            }
        }

        for y in 0..self.h.n() {
            if self.mapped_h >> y & 1 == 1 || self.kh[y] != self.kg[x] {
                continue;
            }
            if hadj[y] & self.mapped_h != images {
                continue;
            }
            let actual_neg = hneg[y] & images;
            let theta = if actual_neg == expect_neg {
                Sign::Positive
            } else if actual_neg == images ^ expect_neg {
                Sign::Negative
            } else {
                continue;
            };
            self.map[x] = y;
            self.theta_g[x] = theta;
            self.mapped_g |= 1 << x;
            self.mapped_h |= 1 << y;
            if self.extend(depth + 1) {
                return true;
            }
            self.mapped_g &= !(1 << x);
            self.mapped_h &= !(1 << y);
        }
        self.map[x] = usize::MAX;
        false
    }
}
