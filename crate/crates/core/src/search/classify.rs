use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::{gamma, kn_minus, sigma, u1};
use crate::graph::SignedGraph;
use crate::iso::{is_switching_isomorphic_with_limit, IsoInvariants, DEFAULT_ISO_LIMIT};

/// Which named construction a graph is switching isomorphic to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassificationTag {
    Gamma {
        n: usize,
        t: usize,
    },
    /// Reported with `1 <= s <= r`; `s = 0` is a `Gamma` and `(s, r)` is symmetric.
    Sigma {
        s: usize,
        t: usize,
        r: usize,
    },
    U1 {
        n: usize,
    },
    /// Complete graph with one negative edge, for orders too small to be a `Gamma`.
    KnMinusEdge {
        n: usize,
    },
    Other,
}

impl fmt::Display for ClassificationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClassificationTag::Gamma { n, t } => write!(f, "gamma:{n},{t}"),
            ClassificationTag::Sigma { s, t, r } => write!(f, "sigma:{s},{t},{r}"),
            ClassificationTag::U1 { n } => write!(f, "u1:{n}"),
            ClassificationTag::KnMinusEdge { n } => write!(f, "knminus:{n}:0-1"),
            ClassificationTag::Other => write!(f, "other"),
        }
    }
}

impl Serialize for ClassificationTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Named constructions whose edge and unbalanced-triangle counts match.
fn candidates(inv: &IsoInvariants) -> Vec<(ClassificationTag, SignedGraph)> {
    let (n, m, tri) = (inv.n, inv.m, inv.unbalanced_triangles);
    let mut out = Vec::new();
    if n >= 4 && tri + 2 <= n && tri >= 1 {
        let t = tri + 2;
        if m == binom2(n - 1) + t - 1 {
            out.push((ClassificationTag::Gamma { n, t }, gamma(n, t).unwrap()));
        }
    }
    if n >= 5 && tri >= 1 && tri <= n - 4 {
        let t = tri;
        for s in 1..=n - 2 - t {
            let r = n - 2 - t - s;
            if s > r {
                break;
            }
            if m == binom2(n - 2) + 1 + s + 2 * t + r {
                out.push((ClassificationTag::Sigma { s, t, r }, sigma(s, t, r).unwrap()));
            }
        }
    }
    if n >= 5 && tri == n - 3 && m == binom2(n - 2) + 1 + 2 * (n - 3) {
        out.push((ClassificationTag::U1 { n }, u1(n).unwrap()));
    }
    if n == 3 && m == 3 && tri == 1 {
        out.push((ClassificationTag::KnMinusEdge { n }, kn_minus(3, &[(0, 1)]).unwrap()));
    }
    out
}

/// Classifies `g` against the named families, refusing graphs above the default size limit.
pub fn classify(g: &SignedGraph) -> Result<ClassificationTag> {
    classify_with_limit(g, DEFAULT_ISO_LIMIT)
}

pub fn classify_with_limit(g: &SignedGraph, limit: usize) -> Result<ClassificationTag> {
    if g.n() > limit {
        return Err(Error::SizeLimit { n: g.n(), limit });
    }
    let inv = IsoInvariants::of(g);
    for (tag, h) in candidates(&inv) {
        if IsoInvariants::of(&h) == inv && is_switching_isomorphic_with_limit(g, &h, limit)? {
            return Ok(tag);
        }
    }
    Ok(ClassificationTag::Other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Sign, SwitchSet};

    #[test]
    fn round_trips() {
        assert_eq!(classify(&gamma(9, 4).unwrap()).unwrap(), ClassificationTag::Gamma { n: 9, t: 4 });
        assert_eq!(classify(&gamma(6, 6).unwrap()).unwrap(), ClassificationTag::Gamma { n: 6, t: 6 });
        assert_eq!(classify(&u1(7).unwrap()).unwrap(), ClassificationTag::U1 { n: 7 });
        let g = sigma(1, 4, 3).unwrap().relabel(&[4, 7, 0, 2, 9, 8, 1, 3, 6, 5]).unwrap();
        let g = g.switch(&SwitchSet::new([0, 3, 5])).unwrap();
        assert_eq!(classify(&g).unwrap(), ClassificationTag::Sigma { s: 1, t: 4, r: 3 });
    }

    #[test]
    fn sigma_symmetry_and_degenerate_cases() {
        assert_eq!(classify(&sigma(3, 2, 1).unwrap()).unwrap(), ClassificationTag::Sigma { s: 1, t: 2, r: 3 });
        // s = 0 is a gamma graph.
        assert_eq!(classify(&sigma(0, 4, 3).unwrap()).unwrap(), ClassificationTag::Gamma { n: 9, t: 6 });
    }

    #[test]
    fn other_and_limits() {
        let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5, Sign::Negative)).collect();
        edges[4] = (0, 4, Sign::Negative);
        let g = SignedGraph::new(8, &edges).unwrap();
        assert_eq!(classify(&g).unwrap(), ClassificationTag::Other);
        assert_eq!(classify(&kn_minus(3, &[(1, 2)]).unwrap()).unwrap(), ClassificationTag::KnMinusEdge { n: 3 });
        assert!(matches!(classify(&gamma(11, 4).unwrap()), Err(Error::SizeLimit { .. })));
        assert_eq!(classify_with_limit(&gamma(11, 4).unwrap(), 11).unwrap(), ClassificationTag::Gamma { n: 11, t: 4 });
    }
}
