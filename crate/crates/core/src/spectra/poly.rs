//! Exact univariate polynomials over the integers and rationals, plus real
//! root isolation with exact sign evaluation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{float::FloatCore, One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Integer polynomial, coefficients stored lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: i64) -> Self {
        Poly::from_i64(&[c])
    }

    /// The polynomial `λ + c`.
    pub fn linear(c: i64) -> Self {
        Poly::from_i64(&[c, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Exact sign of the polynomial at the (exactly represented) float `x`.
    pub fn sign_at(&self, x: f64) -> i32 {
        if self.is_zero() {
            return 0;
        }
        // x = mant * 2^exp; evaluate 2^(-exp*d) * p(x) when exp < 0 to stay integral.
        let (mant, exp, sgn) = FloatCore::integer_decode(x);
        let mant = BigInt::from(mant) * i64::from(sgn);
        let d = self.coeffs.len() - 1;
        let value = if exp >= 0 {
            let xv = mant << exp as usize;
            self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &xv + c)
        } else {
            let k = (-exp) as usize;
            let mut acc = BigInt::zero();
            let mut mant_pow = BigInt::one();
            for (i, c) in self.coeffs.iter().enumerate() {
                acc += (c * &mant_pow) << (k * (d - i));
                mant_pow *= &mant;
            }
            acc
        };
        match value.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        Poly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Real roots counted with multiplicity, sorted in decreasing order.
    pub fn real_roots(&self) -> Vec<f64> {
        let mut roots = Vec::new();
        for (factor, mult) in squarefree_decomposition(self) {
            for r in distinct_real_roots(&factor) {
                roots.extend(std::iter::repeat_n(r, mult));
            }
        }
        roots.sort_by(|a, b| b.total_cmp(a));
        roots
    }

    pub fn largest_real_root(&self) -> Option<f64> {
        self.real_roots().first().copied()
    }
}

fn to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;

            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

/// Rational polynomial used internally for gcd computations.
#[derive(Clone, Debug, PartialEq)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_poly(p: &Poly) -> Self {
        RatPoly::trim(p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    fn trim(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly(c)
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn monic(&self) -> Self {
        let lead = self.0.last().unwrap().clone();
        RatPoly(self.0.iter().map(|c| c / &lead).collect())
    }

    fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let mut r = self.0.clone();
        let dl = d.0.last().unwrap();
        if r.len() < d.0.len() {
            return (RatPoly(vec![]), RatPoly::trim(r));
        }
        let mut q = vec![BigRational::zero(); r.len() - d.0.len() + 1];
        for i in (0..q.len()).rev() {
            let coef = &r[i + d.0.len() - 1] / dl;
            for (j, dc) in d.0.iter().enumerate() {
                r[i + j] -= &coef * dc;
            }
            q[i] = coef;
        }
        (RatPoly::trim(q), RatPoly::trim(r))
    }

    fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> RatPoly {
        RatPoly::trim(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect(),
        )
    }

    /// Integer polynomial with the same roots.
    fn to_primitive_poly(&self) -> Poly {
        let lcm = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Poly::new(self.0.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect())
            .primitive()
    }
}

/// Yun's square-free decomposition: pairs `(factor, multiplicity)`.
fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let f = RatPoly::from_poly(p).monic();
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while c.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree() > 0 {
            out.push((z.to_primitive_poly(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if w.degree() > 0 {
        out.push((w.to_primitive_poly(), i));
    }
    out
}

/// Distinct real roots of a square-free polynomial, increasing.
fn distinct_real_roots(p: &Poly) -> Vec<f64> {
    let d = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    if d == 1 {
        return vec![-to_f64(&p.coeffs[0]) / to_f64(&p.coeffs[1])];
    }
    // Cauchy bound on root magnitude.
    let lead = to_f64(p.leading().unwrap()).abs();
    let bound = 1.0 + p.coeffs[..d].iter().map(|c| to_f64(c).abs() / lead).fold(0.0, f64::max);
    let mut crit: Vec<f64> = squarefree_decomposition(&p.derivative())
        .into_iter()
        .flat_map(|(f, _)| distinct_real_roots(&f))
        .filter(|x| x.abs() < bound)
        .collect();
    crit.sort_by(f64::total_cmp);
    crit.dedup();
    let mut points = vec![-bound];
    points.extend(crit);
    points.push(bound);

    let mut roots = Vec::new();
    for w in points.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (slo, shi) = (p.sign_at(lo), p.sign_at(hi));
        if slo == 0 {
            if roots.last() != Some(&lo) {
                roots.push(lo);
            }
            continue;
        }
        if shi == 0 {
            roots.push(hi);
            continue;
        }
        if slo != shi {
            roots.push(bisect(p, lo, hi, slo));
        }
    }
    roots
}

fn bisect(p: &Poly, mut lo: f64, mut hi: f64, slo: i32) -> f64 {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        match p.sign_at(mid) {
            0 => return mid,
            s if s == slo => lo = mid,
            _ => hi = mid,
        }
    }
}
