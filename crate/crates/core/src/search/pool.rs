//! Top-k pool of switching-isomorphism classes.
//!
//! Classes are kept in decreasing index order. A new graph joins an existing
//! class when their indices agree within the class tolerance (default
//! [`CLASS_TOL`]) and they are switching isomorphic; otherwise it opens a class.
//! After each insertion everything strictly more than the tolerance below the k-th class is dropped, so ties at
//! the cut survive. The first graph seen in a class stays its representative;
//! merging pools in job order therefore gives the same result as one
//! sequential pass.

use crate::graph::SignedGraph;
use crate::iso::{is_switching_isomorphic_with_limit, IsoInvariants};

/// Default index agreement between members of one class, and tie width at the cut.
pub const CLASS_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub(crate) struct PooledClass {
    pub graph: SignedGraph,
    pub index: f64,
    pub invariants: IsoInvariants,
    pub multiplicity: u64,
    /// Largest index deviation seen among members.
    pub spread: f64,
}

#[derive(Clone, Debug)]
pub(crate) struct ClassPool {
    top_k: usize,
    iso_limit: usize,
    tol: f64,
    pub classes: Vec<PooledClass>,
}

impl ClassPool {
    pub fn new(top_k: usize, iso_limit: usize, tol: f64) -> Self {
        ClassPool { top_k: top_k.max(1), iso_limit, tol, classes: Vec::new() }
    }

    /// Indices below this cannot enter the pool.
    pub fn threshold(&self) -> Option<f64> {
        (self.classes.len() >= self.top_k).then(|| self.classes[self.top_k - 1].index - self.tol)
    }

    pub fn accepts(&self, index: f64) -> bool {
        self.threshold().is_none_or(|th| index >= th)
    }

    pub fn offer(&mut self, graph: SignedGraph, index: f64, multiplicity: u64) {
        if !self.accepts(index) {
            return;
        }
        let invariants = IsoInvariants::of(&graph);
        self.offer_with(graph, index, invariants, multiplicity, 0.0);
    }

    fn offer_with(
        &mut self,
        graph: SignedGraph,
        index: f64,
        invariants: IsoInvariants,
        multiplicity: u64,
        spread: f64,
    ) {
        for class in self.classes.iter_mut() {
            if (class.index - index).abs() <= self.tol
                && class.invariants == invariants
                && is_switching_isomorphic_with_limit(&class.graph, &graph, self.iso_limit).unwrap_or(false)
            {
                class.multiplicity += multiplicity;
                class.spread = class.spread.max(spread).max((class.index - index).abs());
                return;
            }
        }
        let pos = self.classes.iter().position(|c| c.index < index).unwrap_or(self.classes.len());
        self.classes.insert(pos, PooledClass { graph, index, invariants, multiplicity, spread });
        self.trim();
    }

    fn trim(&mut self) {
        if let Some(th) = self.threshold() {
            self.classes.retain(|c| c.index >= th);
        }
    }

    /// Folds a later pool into this one.
    pub fn merge(&mut self, other: ClassPool) {
        for c in other.classes {
            if self.accepts(c.index) {
                self.offer_with(c.graph, c.index, c.invariants, c.multiplicity, c.spread);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gamma;
    use crate::graph::SwitchSet;
    use crate::spectra::index;

    #[test]
    fn copies_of_one_class_merge() {
        let g = gamma(6, 4).unwrap();
        let mut pool = ClassPool::new(2, 10, CLASS_TOL);
        pool.offer(g.clone(), index(&g), 1);
        let h = g.relabel(&[5, 4, 3, 2, 1, 0]).unwrap().switch(&SwitchSet::new([1, 2])).unwrap();
        pool.offer(h.clone(), index(&h), 1);
        assert_eq!(pool.classes.len(), 1);
        assert_eq!(pool.classes[0].multiplicity, 2);
        assert_eq!(pool.classes[0].graph, g);
    }

    #[test]
    fn keeps_top_k_and_ties() {
        let mut pool = ClassPool::new(1, 10, CLASS_TOL);
        for t in [3, 5, 4] {
            let g = gamma(7, t).unwrap();
            pool.offer(g.clone(), index(&g), 1);
        }
        assert_eq!(pool.classes.len(), 1);
        assert_eq!(pool.classes[0].graph, gamma(7, 5).unwrap());
        assert!(!pool.accepts(index(&gamma(7, 4).unwrap())));
    }

    #[test]
    fn merge_equals_sequential() {
        let graphs: Vec<_> = (3..=7).flat_map(|t| [gamma(7, t).unwrap(), gamma(7, t).unwrap()]).collect();
        let mut seq = ClassPool::new(3, 10, CLASS_TOL);
        for g in &graphs {
            seq.offer(g.clone(), index(g), 1);
        }
        let mut left = ClassPool::new(3, 10, CLASS_TOL);
        let mut right = ClassPool::new(3, 10, CLASS_TOL);
        for (i, g) in graphs.iter().enumerate() {
            let p = if i < 5 { &mut left } else { &mut right };
            p.offer(g.clone(), index(g), 1);
        }
        left.merge(right);
        let key = |p: &ClassPool| p.classes.iter().map(|c| (c.graph.clone(), c.multiplicity)).collect::<Vec<_>>();
        assert_eq!(key(&seq), key(&left));
    }
}
