//! Cyclic Jacobi eigensolver for real symmetric matrices.
//!
//! Sweeps visit the strictly upper triangle in row-major order and annihilate
//! each entry with one plane rotation. The order is fixed, so results are
//! reproducible bit for bit on a given platform.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::spectra::Matrix;

/// Off-diagonal Frobenius norm at which the solver stops.
pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix, sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub tol: f64,
}

impl Spectrum {
    /// Largest eigenvalue.
    pub fn index(&self) -> f64 {
        self.values[0]
    }

    /// Largest absolute eigenvalue.
    pub fn spectral_radius(&self) -> f64 {
        self.values.first().unwrap().abs().max(self.values.last().unwrap().abs())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * s).sqrt()
}

/// Diagonalises `a` (row-major, `n x n`, symmetric) in place. The diagonal
/// holds the eigenvalues on success; returns the number of sweeps used.
pub(crate) fn jacobi_in_place(a: &mut [f64], n: usize, tol: f64) -> Result<usize> {
    let mut off = off_diagonal_norm(a, n);
    let mut sweeps = 0;
    while off >= tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        off = off_diagonal_norm(a, n);
    }
    Ok(sweeps)
}

/// Full spectrum of a symmetric matrix.
pub fn eigenvalues_symmetric(m: &Matrix<f64>, tol: f64) -> Result<Spectrum> {
    let n = m.require_square()?;
    for i in 0..n {
        for j in i + 1..n {
            let diff = (m[(i, j)] - m[(j, i)]).abs();
            if diff > tol {
                return Err(Error::NotSymmetric { row: i, col: j, diff });
            }
        }
    }
    let mut a = m.as_slice().to_vec();
    jacobi_in_place(&mut a, n, tol)?;
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(Spectrum { values, tol })
}

/// Spectrum of the signed adjacency matrix.
pub fn spectrum(g: &SignedGraph) -> Spectrum {
    eigenvalues_symmetric(&g.adjacency().to_f64(), DEFAULT_TOL).expect("adjacency matrices are symmetric")
}

/// Index: the largest adjacency eigenvalue.
pub fn index(g: &SignedGraph) -> f64 {
    spectrum(g).index()
}

pub fn spectral_radius(g: &SignedGraph) -> f64 {
    spectrum(g).spectral_radius()
}

/// Reusable buffer for computing many adjacency spectra without allocating.
#[derive(Default)]
pub(crate) struct EigenScratch {
    buf: Vec<f64>,
}

impl EigenScratch {
    fn load(&mut self, adj: &[u64], neg: &[u64]) -> usize {
        let n = adj.len();
        self.buf.clear();
        self.buf.resize(n * n, 0.0);
        for u in 0..n {
            for v in 0..n {
                if adj[u] >> v & 1 == 1 {
                    self.buf[u * n + v] = if neg[u] >> v & 1 == 1 { -1.0 } else { 1.0 };
                }
            }
        }
        n
    }

    /// Largest and smallest adjacency eigenvalue of the graph given by masks.
    pub(crate) fn extremes(&mut self, adj: &[u64], neg: &[u64]) -> (f64, f64) {
        let n = self.load(adj, neg);
        jacobi_in_place(&mut self.buf, n, DEFAULT_TOL).expect("jacobi converges on adjacency matrices");
        let mut hi = f64::NEG_INFINITY;
        let mut lo = f64::INFINITY;
        for i in 0..n {
            hi = hi.max(self.buf[i * n + i]);
            lo = lo.min(self.buf[i * n + i]);
        }
        (hi, lo)
    }

    pub(crate) fn index(&mut self, adj: &[u64], neg: &[u64]) -> f64 {
        self.extremes(adj, neg).0
    }
}
