//! Maximum cardinality matching in general graphs (Edmonds' blossom algorithm)
//! on bitmask adjacency, up to 64 vertices.

use crate::graph::bits;

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [u64],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for to in bits(self.adj[v]) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        NONE
    }
}

/// Mates of a maximum matching; `adj` must be symmetric and loop-free.
pub fn maximum_matching(adj: &[u64]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut b = Blossom {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: Vec::with_capacity(n),
    };
    for (v, &row) in adj.iter().enumerate() {
        if b.mate[v] != NONE || row == 0 {
            continue;
        }
        let mut end = b.find_path(v);
        while end != NONE {
            let pv = b.parent[end];
            let ppv = b.mate[pv];
            b.mate[end] = pv;
            b.mate[pv] = end;
            end = ppv;
        }
    }
    b.mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

pub fn maximum_matching_size(adj: &[u64]) -> usize {
    maximum_matching(adj).iter().filter(|m| m.is_some()).count() / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive oracle: branch on the lowest unmatched vertex.
    fn brute_force(adj: &[u64], free: u64) -> usize {
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = brute_force(adj, rest);
        for u in bits(adj[v] & rest) {
            best = best.max(1 + brute_force(adj, rest & !(1 << u)));
        }
        best
    }

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    #[test]
    fn odd_cycle_needs_blossom() {
        // Triangle 0-1-2 with pendant 3 at 2 and pendant 4 at 0.
        let adj = from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (0, 4)]);
        assert_eq!(maximum_matching_size(&adj), 2);
        // Petersen graph has a perfect matching.
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let adj = from_edges(10, &[outer, inner, spokes].concat());
        assert_eq!(maximum_matching_size(&adj), 5);
    }

    #[test]
    fn mates_are_consistent_edges() {
        let adj = from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        let mates = maximum_matching(&adj);
        for (v, m) in mates.iter().enumerate() {
            if let Some(u) = *m {
                assert_eq!(mates[u], Some(v));
                assert!(adj[v] >> u & 1 == 1);
            }
        }
        assert_eq!(maximum_matching_size(&adj), 3);
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..11, seed in any::<u64>(), density in 0.05f64..0.9) {
            let mut x = seed | 1;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                    if (x % 1000) as f64 / 1000.0 < density {
                        edges.push((u, v));
                    }
                }
            }
            let adj = from_edges(n, &edges);
            prop_assert_eq!(maximum_matching_size(&adj), brute_force(&adj, (1u64 << n) - 1));
        }
    }
}
