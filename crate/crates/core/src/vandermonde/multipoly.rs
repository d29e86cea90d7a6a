//! Sparse multivariate polynomials over Z.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector with trailing zeros trimmed, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            out[i] = out[i].checked_sub(e)?;
        }
        Some(Monomial::new(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(Monomial::new(e), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; variables beyond `images` are kept.
    pub fn substitute(&self, images: &[MultiPoly]) -> Self {
        let mut cache: Vec<Vec<MultiPoly>> = vec![vec![Self::one()]; images.len()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            let mut rest = vec![0u32; m.0.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if i < images.len() {
                    while cache[i].len() <= e as usize {
                        let next = cache[i].last().expect("nonempty") * &images[i];
                        cache[i].push(next);
                    }
                    acc = &acc * &cache[i][e as usize];
                } else {
                    rest[i] = e;
                }
            }
            let rest = MultiPoly::monomial(Monomial::new(rest), BigInt::one());
            out = out + &acc * &rest;
        }
        out
    }

    /// Coefficient of `x_var^k`, as a polynomial in the remaining variables
    /// (the slot of `var` is left at exponent zero).
    pub fn coeff_in_var(&self, var: usize, k: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.exp(var) == k {
                let mut e = m.0.clone();
                if var < e.len() {
                    e[var] = 0;
                }
                out.add_term(Monomial::new(e), c.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division under graded-lex leading-term reduction.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let (lm, lc) = d
            .leading()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| Error::Internal("division by zero polynomial".into()))?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm
                .div(&lm)
                .ok_or_else(|| Error::Internal(format!("inexact division: leading monomial {rm:?} not divisible")))?;
            let (qc, rem) = rc.div_rem(&lc);
            if !rem.is_zero() {
                return Err(Error::Internal("inexact division: coefficient not divisible".into()));
            }
            let t = Self::monomial(qm, qc);
            r = r - &(&t * d);
            q = q + t;
        }
        Ok(q)
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Add<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: &MultiPoly) -> MultiPoly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl Sub<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: &MultiPoly) -> MultiPoly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self - &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Determinant by expansion over column subsets, row by row.
pub fn det<T, Z, M, A>(m: &[Vec<T>], zero: T, one: T, is_zero: Z, mul: M, add: A) -> T
where
    T: Clone,
    Z: Fn(&T) -> bool,
    M: Fn(&T, &T) -> T,
    A: Fn(T, &T, bool) -> T,
{
    let n = m.len();
    assert!(n <= 16 && m.iter().all(|r| r.len() == n), "square matrix expected");
    let full = 1usize << n;
    let mut dp: Vec<Option<T>> = vec![None; full];
    dp[0] = Some(one);
    for mask in 0..full - 1 {
        let Some(cur) = dp[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        for c in 0..n {
            if mask & (1 << c) != 0 || is_zero(&m[row][c]) {
                continue;
            }
            let negate = (mask >> (c + 1)).count_ones() % 2 == 1;
            let term = mul(&cur, &m[row][c]);
            let next = mask | (1 << c);
            let acc = dp[next].take().unwrap_or_else(|| zero.clone());
            dp[next] = Some(add(acc, &term, negate));
        }
    }
    dp[full - 1].take().unwrap_or(zero)
}

pub fn det_multipoly(m: &[Vec<MultiPoly>]) -> MultiPoly {
    if m.is_empty() {
        return MultiPoly::one();
    }
    det(
        m,
        MultiPoly::zero(),
        MultiPoly::one(),
        |x| x.is_zero(),
        |a, b| a * b,
        |acc, t, neg| if neg { acc - t } else { acc + t },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = x(0) + x(1);
        let b = x(0) - x(1);
        let prod = &a * &b;
        assert_eq!(prod, x(0).pow(2) - x(1).pow(2));
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!((x(0).pow(2) + x(1)).div_exact(&a).is_err());
    }

    #[test]
    fn determinant_2x2() {
        let m = vec![vec![x(0), x(1)], vec![x(2), MultiPoly::constant(3)]];
        assert_eq!(det_multipoly(&m), x(0).scale(&3.into()) - &(&x(1) * &x(2)));
        let z = vec![vec![MultiPoly::zero(), x(0)], vec![MultiPoly::zero(), x(1)]];
        assert!(det_multipoly(&z).is_zero());
    }

    #[test]
    fn substitution_shift() {
        let f = &x(0) * &x(1);
        let g = f.substitute(&[x(0) + MultiPoly::one(), x(1)]);
        assert_eq!(g, &x(0) * &x(1) + x(1));
    }

    #[test]
    fn display() {
        let f = x(0).pow(2).scale(&2.into()) - x(1) + MultiPoly::constant(-3);
        assert_eq!(f.to_string(), "2*x0^2 - x1 - 3");
    }
}
