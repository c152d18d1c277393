//! Quotient matrices of block partitions and the eigenvalue interlacing check
//! for equitable partitions.

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::spectra::{char_poly_exact, eigenvalues_symmetric, CharPoly, Matrix, DEFAULT_TOL};

/// Block-averaged matrix of a partitioned square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientMatrix {
    pub partition: Vec<Vec<usize>>,
    /// `entries[(i, j)]` is the average row sum of block `(i, j)`.
    pub entries: Matrix<Rational64>,
    /// Every block has constant row sums.
    pub equitable: bool,
}

impl QuotientMatrix {
    /// The entries as integers, if they all are.
    pub fn to_integer(&self) -> Option<Matrix<i64>> {
        if self.entries.as_slice().iter().any(|q| !q.is_integer()) {
            return None;
        }
        Some(self.entries.map(|q| q.to_integer()))
    }
}

impl Serialize for QuotientMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuotientMatrix", 3)?;
        st.serialize_field("partition", &self.partition)?;
        st.serialize_field("entries", &self.entries.map(ToString::to_string))?;
        st.serialize_field("equitable", &self.equitable)?;
        st.end()
    }
}

pub(crate) fn validate_partition(n: usize, partition: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    for (b, block) in partition.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidPartition(format!("block {b} is empty")));
        }
        for &v in block {
            if v >= n {
                return Err(Error::InvalidPartition(format!("vertex {v} out of range (n = {n})")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
    }
    Ok(())
}

pub fn quotient_matrix(m: &Matrix<i64>, partition: &[Vec<usize>]) -> Result<QuotientMatrix> {
    let n = m.require_square()?;
    validate_partition(n, partition)?;
    let k = partition.len();
    let mut entries = Matrix::zeros(k, k);
    let mut equitable = true;
    for (i, bi) in partition.iter().enumerate() {
        for (j, bj) in partition.iter().enumerate() {
            let sums: Vec<i64> = bi.iter().map(|&r| bj.iter().map(|&c| m[(r, c)]).sum()).collect();
            if sums.iter().any(|&s| s != sums[0]) {
                equitable = false;
            }
            entries[(i, j)] = Rational64::new(sums.iter().sum(), bi.len() as i64);
        }
    }
    Ok(QuotientMatrix { partition: partition.to_vec(), entries, equitable })
}

/// Outcome of comparing the spectrum of an equitable quotient with the full spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientSpectrumReport {
    pub quotient: QuotientMatrix,
    pub quotient_char_poly: CharPoly,
    /// Real roots of the quotient's characteristic polynomial, decreasing.
    pub quotient_eigenvalues: Vec<f64>,
    pub spectrum: Vec<f64>,
    /// Every quotient eigenvalue was matched to a distinct eigenvalue of the full matrix.
    pub contained: bool,
    /// Quotient eigenvalues left without a partner.
    pub unmatched: Vec<f64>,
    /// Eigenvalues of the full matrix not consumed by the matching, decreasing.
    pub residual: Vec<f64>,
    /// Residual eigenvalues grouped within tolerance: `(value, multiplicity)`.
    pub residual_clusters: Vec<(f64, usize)>,
    pub index: f64,
    pub quotient_index: f64,
    pub index_matches: bool,
    pub tol: f64,
}

impl QuotientSpectrumReport {
    /// True iff every residual eigenvalue lies within `tol` of one of `values`.
    pub fn residual_within(&self, values: &[f64]) -> bool {
        self.residual.iter().all(|r| values.iter().any(|v| (r - v).abs() <= self.tol))
    }
}

/// Greedy multiset containment: each target is matched to the nearest unused
/// candidate, and consumed. Returns `(unmatched targets, unused candidates)`.
pub(crate) fn greedy_match(targets: &[f64], candidates: &[f64], tol: f64) -> (Vec<f64>, Vec<f64>) {
    let mut used = vec![false; candidates.len()];
    let mut unmatched = Vec::new();
    for &t in targets {
        let best = candidates
            .iter()
            .enumerate()
            .filter(|&(i, _)| !used[i])
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()));
        match best {
            Some((i, &c)) if (c - t).abs() <= tol => used[i] = true,
            _ => unmatched.push(t),
        }
    }
    let rest = candidates.iter().zip(&used).filter(|(_, &u)| !u).map(|(&c, _)| c).collect();
    (unmatched, rest)
}

fn cluster(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((c, k)) if (*c - v).abs() <= tol => *k += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Checks that the eigenvalues of the equitable quotient of `A(g)` appear in
/// the spectrum of `A(g)`, and reports what is left over.
pub fn verify_quotient_spectrum(g: &SignedGraph, partition: &[Vec<usize>], tol: f64) -> Result<QuotientSpectrumReport> {
    let a = g.adjacency();
    let quotient = quotient_matrix(&a, partition)?;
    if !quotient.equitable {
        let (i, j) = first_uneven_block(&a, partition);
        return Err(Error::NotEquitable(i, j));
    }
    let q_int = quotient.to_integer().expect("equitable quotient of an integer matrix is integral");
    let quotient_char_poly = char_poly_exact(&q_int)?;
    let quotient_eigenvalues = quotient_char_poly.real_roots();
    let spectrum = eigenvalues_symmetric(&a.to_f64(), DEFAULT_TOL)?.values;
    let (mut unmatched, residual) = greedy_match(&quotient_eigenvalues, &spectrum, tol);
    // Complex quotient eigenvalues cannot match anything.
    let missing = q_int.rows() - quotient_eigenvalues.len();
    unmatched.extend(std::iter::repeat_n(f64::NAN, missing));
    let index = spectrum[0];
    let quotient_index = quotient_eigenvalues.first().copied().unwrap_or(f64::NAN);
    Ok(QuotientSpectrumReport {
        contained: unmatched.is_empty(),
        residual_clusters: cluster(&residual, tol),
        index_matches: (index - quotient_index).abs() <= tol,
        quotient,
        quotient_char_poly,
        quotient_eigenvalues,
        spectrum,
        unmatched,
        residual,
        index,
        quotient_index,
        tol,
    })
}

fn first_uneven_block(a: &Matrix<i64>, partition: &[Vec<usize>]) -> (usize, usize) {
    for (i, bi) in partition.iter().enumerate() {
        for (j, bj) in partition.iter().enumerate() {
            let mut sums = bi.iter().map(|&r| bj.iter().map(|&c| a[(r, c)]).sum::<i64>());
            let first = sums.next().unwrap();
            if sums.any(|s| s != first) {
                return (i, j);
            }
        }
    }
    (0, 0)
}
