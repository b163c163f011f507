//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration is
//! lexicographic on exponents and serialized output is reproducible.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Build a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector. Ordering is lexicographic on the entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zeros(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    pub fn unit(len: usize, pos: usize) -> Self {
        let mut e = vec![0; len];
        e[pos] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree `|γ|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices of length `len` with `|α| = total`, in lexicographic order.
pub fn compositions(len: usize, total: u32) -> Vec<MultiIndex> {
    fn rec(len: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if len == 1 {
            prefix.push(total);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(len - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(len, total, &mut Vec::with_capacity(len), &mut out);
    out
}

/// All multi-indices of length `len` with `|γ| <= max_degree`, in lexicographic order.
pub fn indices_up_to(len: usize, max_degree: u32) -> Vec<MultiIndex> {
    let mut out: Vec<MultiIndex> = (0..=max_degree)
        .flat_map(|t| compositions(len, t))
        .collect();
    out.sort();
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Multinomial coefficient `|α|! / (α₁! ⋯ α_k!)`.
pub fn multinomial(alpha: &MultiIndex) -> BigInt {
    let mut r = factorial(alpha.degree());
    for &a in &alpha.0 {
        r /= factorial(a);
    }
    r
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(n_vars);
        p.add_term(MultiIndex::zeros(n_vars), c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Polynomial::constant(n_vars, Rational::one())
    }

    /// The coordinate `θ_{i+1}` (zero-based `i`).
    pub fn var(n_vars: usize, i: usize) -> Self {
        Polynomial::monomial(n_vars, MultiIndex::unit(n_vars, i), Rational::one())
    }

    /// `1 − θ₁ − ⋯ − θₙ`.
    pub fn one_minus_sum(n_vars: usize) -> Self {
        let mut p = Polynomial::one(n_vars);
        for i in 0..n_vars {
            p.add_term(MultiIndex::unit(n_vars, i), -Rational::one());
        }
        p
    }

    pub fn monomial(n_vars: usize, exp: MultiIndex, coeff: Rational) -> Self {
        assert_eq!(exp.len(), n_vars, "exponent length must equal n_vars");
        let mut p = Polynomial::zero(n_vars);
        p.add_term(exp, coeff);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and zero results pruned.
    pub fn from_terms<I>(n_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Polynomial::zero(n_vars);
        for (exp, c) in terms {
            if exp.len() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    found: exp.len(),
                });
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &MultiIndex) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term, `p(0)`.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&MultiIndex::zeros(self.n_vars))
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    fn check_dims(&self, other: &Polynomial) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: other.n_vars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut acc: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                *acc.entry(e1.add(e2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            n_vars: self.n_vars,
            terms: acc,
        })
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.n_vars);
        }
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.n_vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    v *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Approximate evaluation, for reporting only.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = to_f64(c);
                for (x, &k) in point.iter().zip(&e.0) {
                    v *= x.powi(k as i32);
                }
                v
            })
            .sum()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let is_const = e.degree() == 0;
            if is_const || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            let mut first = is_const || !abs.is_one();
            for (v, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if first {
                    write!(f, "*")?;
                }
                first = true;
                write!(f, "t{}", v + 1)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}
