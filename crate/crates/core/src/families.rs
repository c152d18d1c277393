//! Named signed graphs and the closed-form polynomials attached to them.
//!
//! Vertex conventions (0-based):
//! - `gamma(n, t)`: clique on `0..n-1`, extra vertex `u = n-1` joined to `0..=t-2`, `u0` negative.
//! - `sigma(s, t, r)`: `v1 = 0`, `v2 = 1`, then blocks S, T, R in that order.
//! - `u1(n)`: `v1 = 0`, `v2 = 1`, clique `2..n`, with `n-1` missed by both `v1` and `v2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::spectra::{CharPoly, Matrix, Poly};

fn clique_edges(vertices: impl Iterator<Item = usize> + Clone) -> Vec<(usize, usize, Sign)> {
    let vs: Vec<usize> = vertices.collect();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            out.push((a, b, Sign::Positive));
        }
    }
    out
}

/// Clique `K_{n-1}` plus a vertex joined to `t-1` clique vertices, one of them negatively.
pub fn gamma(n: usize, t: usize) -> Result<SignedGraph> {
    if n < 4 || t < 3 || t > n {
        return Err(Error::InvalidFamily(format!("gamma requires n >= 4 and 3 <= t <= n, got n={n}, t={t}")));
    }
    let u = n - 1;
    let mut edges = clique_edges(0..u);
    edges.push((0, u, Sign::Negative));
    edges.extend((1..=t - 2).map(|v| (v, u, Sign::Positive)));
    SignedGraph::new(n, &edges)
}

/// Negative edge `v1 v2` over a positive clique `S ∪ T ∪ R`; `v1` sees `S ∪ T`, `v2` sees `T ∪ R`.
pub fn sigma(s: usize, t: usize, r: usize) -> Result<SignedGraph> {
    let n = s + t + r + 2;
    if t < 1 || n < 5 {
        return Err(Error::InvalidFamily(format!("sigma requires t >= 1 and s+t+r+2 >= 5, got s={s}, t={t}, r={r}")));
    }
    let mut edges = clique_edges(2..n);
    edges.push((0, 1, Sign::Negative));
    edges.extend((2..2 + s + t).map(|v| (0, v, Sign::Positive)));
    edges.extend((2 + s..n).map(|v| (1, v, Sign::Positive)));
    SignedGraph::new(n, &edges)
}

/// Negative edge `v1 v2`, both joined to every vertex of a positive `K_{n-2}` but the last.
pub fn u1(n: usize) -> Result<SignedGraph> {
    if n < 5 {
        return Err(Error::InvalidFamily(format!("u1 requires n >= 5, got n={n}")));
    }
    let mut edges = clique_edges(2..n);
    edges.push((0, 1, Sign::Negative));
    for v in 2..n - 1 {
        edges.push((0, v, Sign::Positive));
        edges.push((1, v, Sign::Positive));
    }
    SignedGraph::new(n, &edges)
}

/// Complete graph with the listed edges negative.
pub fn kn_minus(n: usize, neg_edges: &[(usize, usize)]) -> Result<SignedGraph> {
    let mut g = kn_plus(n)?;
    for &(u, v) in neg_edges {
        if u >= n || v >= n || u == v {
            return Err(Error::InvalidFamily(format!("({u}, {v}) is not an edge of K_{n}")));
        }
        if g.sign(u, v) == Some(Sign::Negative) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        g.insert(u, v, Sign::Negative);
    }
    Ok(g)
}

pub fn kn_plus(n: usize) -> Result<SignedGraph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    SignedGraph::new(n, &clique_edges(0..n))
}

/// The five-block equitable partition `{v1}, {v2}, S, T, R` of `sigma(s, t, r)`.
/// Empty blocks are dropped.
pub fn sigma_partition(s: usize, t: usize, r: usize) -> Vec<Vec<usize>> {
    let n = s + t + r + 2;
    [vec![0], vec![1], (2..2 + s).collect(), (2 + s..2 + s + t).collect(), (2 + s + t..n).collect()]
        .into_iter()
        .filter(|b: &Vec<usize>| !b.is_empty())
        .collect()
}

/// The four-block equitable partition `{v1}, {v2}, clique ∩ N(v1), {v_n}` of `u1(n)`.
pub fn u1_partition(n: usize) -> Vec<Vec<usize>> {
    vec![vec![0], vec![1], (2..n - 1).collect(), vec![n - 1]]
}

fn monic(coeffs: &[i64]) -> CharPoly {
    CharPoly::from_poly(Poly::from_i64(coeffs)).expect("leading coefficient is 1")
}

/// `λ^3 - (n-3)λ^2 - (n+t-3)λ - t^2 + (n+4)t - n - 7`, whose largest root is the index of `gamma(n, t)`.
pub fn g_poly(n: i64, t: i64) -> CharPoly {
    monic(&[-t * t + (n + 4) * t - n - 7, -(n + t - 3), -(n - 3), 1])
}

/// Quotient matrix of `sigma(1, t-1, n-t-2)` under [`sigma_partition`].
pub fn q1_matrix(n: i64, t: i64) -> Matrix<i64> {
    Matrix::from_rows(vec![
        vec![0, -1, 1, t - 1, 0],
        vec![-1, 0, 0, t - 1, n - t - 2],
        vec![1, 0, 0, t - 1, n - t - 2],
        vec![1, 1, 1, t - 2, n - t - 2],
        vec![0, 1, 1, t - 1, n - t - 3],
    ])
    .expect("rectangular")
}

/// Closed form of the characteristic polynomial of [`q1_matrix`].
pub fn pq1_poly(n: i64, t: i64) -> CharPoly {
    monic(&[
        4 * n - 12,
        2 * n * t + 4 * n - 2 * t * t - 2 * t - 16,
        n * t - n - t * t - 2 * t - 1,
        9 - 3 * n - t,
        5 - n,
        1,
    ])
}

/// Closed form of `(λ+1)^2 g_{n,t}(λ) - P_{Q1}(λ)`.
pub fn q1_identity_remainder(n: i64, t: i64) -> Poly {
    Poly::from_i64(&[(t - 5) * (n - t - 1), 5 + 9 * t - 7 * n, 3 + 4 * t - 3 * n, 1])
}

/// Quotient matrix of `u1(n)` under [`u1_partition`].
pub fn q2_matrix(n: i64) -> Matrix<i64> {
    Matrix::from_rows(vec![vec![0, -1, n - 3, 0], vec![-1, 0, n - 3, 0], vec![1, 1, n - 4, 1], vec![0, 0, n - 3, 0]])
        .expect("rectangular")
}

/// Closed form of the characteristic polynomial of [`q2_matrix`].
pub fn pq2_poly(n: i64) -> CharPoly {
    monic(&[n - 3, 3 * n - 10, 8 - 3 * n, 4 - n, 1])
}

/// Closed form of `(λ+1) g_{n,n-2}(λ) - P_{Q2}(λ)`, i.e. `4(n - λ - 4)`.
pub fn q2_identity_remainder(n: i64) -> Poly {
    Poly::from_i64(&[4 * (n - 4), -4])
}

/// A named construction, parseable from the CLI family specifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    Gamma { n: usize, t: usize },
    Sigma { s: usize, t: usize, r: usize },
    U1 { n: usize },
    KnMinus { n: usize, neg_edges: Vec<(usize, usize)> },
    KnPlus { n: usize },
}

impl FamilyParams {
    pub fn build(&self) -> Result<SignedGraph> {
        match self {
            FamilyParams::Gamma { n, t } => gamma(*n, *t),
            FamilyParams::Sigma { s, t, r } => sigma(*s, *t, *r),
            FamilyParams::U1 { n } => u1(*n),
            FamilyParams::KnMinus { n, neg_edges } => kn_minus(*n, neg_edges),
            FamilyParams::KnPlus { n } => kn_plus(*n),
        }
    }
}

fn parse_usizes(s: &str, expected: usize, whole: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != expected {
        return Err(Error::InvalidFamily(format!("`{whole}`: expected {expected} parameters")));
    }
    parts.iter().map(|p| p.parse().map_err(|_| Error::InvalidFamily(format!("`{whole}`: bad integer `{p}`")))).collect()
}

impl FromStr for FamilyParams {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidFamily(format!("`{spec}`: expected <family>:<params>")))?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "gamma" => {
                let p = parse_usizes(rest, 2, spec)?;
                Ok(FamilyParams::Gamma { n: p[0], t: p[1] })
            }
            "sigma" => {
                let p = parse_usizes(rest, 3, spec)?;
                Ok(FamilyParams::Sigma { s: p[0], t: p[1], r: p[2] })
            }
            "u1" => Ok(FamilyParams::U1 { n: parse_usizes(rest, 1, spec)?[0] }),
            "knplus" => Ok(FamilyParams::KnPlus { n: parse_usizes(rest, 1, spec)?[0] }),
            "knminus" => {
                let (n, edges) = rest.split_once(':').unwrap_or((rest, ""));
                let n = parse_usizes(n, 1, spec)?[0];
                let mut neg_edges = Vec::new();
                for e in edges.split(';').map(str::trim).filter(|e| !e.is_empty()) {
                    let (u, v) = e
                        .split_once('-')
                        .ok_or_else(|| Error::InvalidFamily(format!("`{spec}`: edge `{e}` should be u-v")))?;
                    let uv = parse_usizes(&format!("{u},{v}"), 2, spec)?;
                    neg_edges.push((uv[0], uv[1]));
                }
                Ok(FamilyParams::KnMinus { n, neg_edges })
            }
            other => Err(Error::InvalidFamily(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyParams::Gamma { n, t } => write!(f, "gamma:{n},{t}"),
            FamilyParams::Sigma { s, t, r } => write!(f, "sigma:{s},{t},{r}"),
            FamilyParams::U1 { n } => write!(f, "u1:{n}"),
            FamilyParams::KnPlus { n } => write!(f, "knplus:{n}"),
            FamilyParams::KnMinus { n, neg_edges } => {
                write!(f, "knminus:{n}:")?;
                for (i, (u, v)) in neg_edges.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{u}-{v}")?;
                }
                Ok(())
            }
        }
    }
}
