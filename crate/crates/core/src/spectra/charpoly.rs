use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{Matrix, Poly};

/// Monic characteristic polynomial `det(λI - M)` with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CharPoly(Poly);

impl CharPoly {
    /// Wraps a monic polynomial. Returns `None` for anything else.
    pub fn from_poly(p: Poly) -> Option<Self> {
        p.leading().is_some_and(One::is_one).then_some(CharPoly(p))
    }

    /// Coefficients `c_0 ..= c_k`, with `c_k = 1`.
    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap()
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn real_roots(&self) -> Vec<f64> {
        self.0.real_roots()
    }

    pub fn largest_real_root(&self) -> Option<f64> {
        self.0.largest_real_root()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact characteristic polynomial by the Faddeev–LeVerrier recursion.
///
/// `N_1 = I`, `c_{k-j} = -tr(M N_j) / j`, `N_{j+1} = M N_j + c_{k-j} I`.
/// Every division is exact over the integers; the arithmetic is arbitrary precision.
pub fn char_poly_exact(m: &Matrix<i64>) -> Result<CharPoly> {
    let k = m.require_square()?;
    let a: Vec<BigInt> = m.as_slice().iter().map(|&x| BigInt::from(x)).collect();
    let mut coeffs = vec![BigInt::zero(); k + 1];
    coeffs[k] = BigInt::one();

    let mut n_j: Vec<BigInt> = identity(k);
    for j in 1..=k {
        let mn = matmul(&a, &n_j, k);
        let trace: BigInt = (0..k).map(|i| &mn[i * k + i]).sum();
        let c = -(trace / BigInt::from(j));
        n_j = mn;
        for i in 0..k {
            n_j[i * k + i] += &c;
        }
        coeffs[k - j] = c;
    }
    debug_assert!(n_j.iter().all(Zero::is_zero), "Cayley-Hamilton residual must vanish");
    CharPoly::from_poly(Poly::new(coeffs)).ok_or(Error::EmptyMatrix)
}

fn identity(k: usize) -> Vec<BigInt> {
    let mut id = vec![BigInt::zero(); k * k];
    for i in 0..k {
        id[i * k + i] = BigInt::one();
    }
    id
}

fn matmul(a: &[BigInt], b: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); k * k];
    for i in 0..k {
        for l in 0..k {
            let x = &a[i * k + l];
            if x.is_zero() {
                continue;
            }
            for j in 0..k {
                out[i * k + j] += x * &b[l * k + j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: det(xI - M) by fraction-free Bareiss elimination.
    fn det_shifted(m: &Matrix<i64>, x: i64) -> BigInt {
        let k = m.rows();
        let mut a: Vec<Vec<BigInt>> =
            (0..k).map(|i| (0..k).map(|j| BigInt::from(if i == j { x } else { 0 } - m[(i, j)])).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for p in 0..k {
            if a[p][p].is_zero() {
                match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                    Some(r) => {
                        a.swap(p, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in p + 1..k {
                for j in p + 1..k {
                    a[i][j] = (&a[i][j] * &a[p][p] - &a[i][p] * &a[p][j]) / &prev;
                }
            }
            prev = a[p][p].clone();
        }
        sign * &a[k - 1][k - 1]
    }

    #[test]
    fn positive_triangle() {
        let m = Matrix::from_rows(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(char_poly_exact(&m).unwrap().to_string(), "λ^3 - 3λ - 2");
    }

    #[test]
    fn zero_matrix() {
        let m: Matrix<i64> = Matrix::zeros(2, 2);
        assert_eq!(char_poly_exact(&m).unwrap().to_string(), "λ^2");
    }

    #[test]
    fn trace_coefficient() {
        let m = Matrix::from_rows(vec![vec![3, 1, 0], vec![2, -4, 1], vec![7, 7, 5]]).unwrap();
        let p = char_poly_exact(&m).unwrap();
        assert_eq!(p.coeffs()[2], BigInt::from(-m.trace()));
    }

    #[test]
    fn agrees_with_bareiss_determinant() {
        let mut x = 88172645463325252u64;
        for k in 1..=9 {
            let mut m = Matrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    m[(i, j)] = (x % 11) as i64 - 5;
                }
            }
            let p = char_poly_exact(&m).unwrap();
            for t in -3..=3 {
                assert_eq!(p.as_poly().eval_i64(t), det_shifted(&m, t), "k={k} x={t}");
            }
        }
    }

    #[test]
    fn non_square_rejected() {
        let m = Matrix::from_rows(vec![vec![1, 2]]).unwrap();
        assert!(char_poly_exact(&m).is_err());
    }
}
