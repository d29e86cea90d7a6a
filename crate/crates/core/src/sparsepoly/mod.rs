//! Sparse univariate polynomials with exact rational coefficients.

mod newton;
mod parse;

pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use parse::parse_poly;

use crate::arith::{binomial, modp, pow_big, pow_mod, rat_mod, val_rat};
use crate::error::{Error, Result};
use crate::padic::PadicNum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// `a_0 x^{α_0} + … + a_t x^{α_t}` with strictly increasing exponents and
/// nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyDoc", into = "PolyDoc")]
pub struct SparsePoly {
    terms: Vec<(u64, BigRational)>,
}

#[derive(Serialize, Deserialize)]
struct PolyDoc {
    terms: Vec<(u64, String)>,
}

impl From<SparsePoly> for PolyDoc {
    fn from(f: SparsePoly) -> Self {
        PolyDoc {
            terms: f.terms.into_iter().map(|(e, c)| (e, c.to_string())).collect(),
        }
    }
}

impl TryFrom<PolyDoc> for SparsePoly {
    type Error = Error;

    fn try_from(doc: PolyDoc) -> Result<Self> {
        let mut terms = Vec::with_capacity(doc.terms.len());
        for (i, (e, c)) in doc.terms.into_iter().enumerate() {
            let c: BigRational = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse { pos: i, msg: format!("bad coefficient '{c}'") })?;
            terms.push((e, c));
        }
        SparsePoly::new(terms)
    }
}

impl SparsePoly {
    /// Builds a polynomial from terms in any order. Zero coefficients are
    /// dropped; repeated exponents are rejected.
    pub fn new(terms: Vec<(u64, BigRational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if map.insert(e, c).is_some() {
                return Err(Error::DuplicateExponent(e));
            }
        }
        Ok(Self::from_map(map))
    }

    pub(crate) fn from_map(map: BTreeMap<u64, BigRational>) -> Self {
        SparsePoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Builds from integer terms, summing repeated exponents.
    pub fn from_ints(terms: &[(u64, i64)]) -> Self {
        let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
        for &(e, c) in terms {
            *map.entry(e).or_insert_with(BigRational::zero) += BigRational::from_integer(c.into());
        }
        Self::from_map(map)
    }

    /// Builds from big-integer terms, summing repeated exponents.
    pub fn from_big_ints(terms: &[(u64, BigInt)]) -> Self {
        let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(*e).or_insert_with(BigRational::zero) += BigRational::from_integer(c.clone());
        }
        Self::from_map(map)
    }

    pub fn zero() -> Self {
        SparsePoly { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(u64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms minus one; `None` for the zero polynomial.
    pub fn t(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.terms.iter().map(|(e, _)| *e).collect()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, e: u64) -> BigRational {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// Divides out `x^{α_0}`; returns the stripped exponent and the quotient.
    pub fn strip_monomial(&self) -> (u64, SparsePoly) {
        let Some(&(a0, _)) = self.terms.first() else {
            return (0, self.clone());
        };
        let terms = self.terms.iter().map(|(e, c)| (e - a0, c.clone())).collect();
        (a0, SparsePoly { terms })
    }

    pub fn derivative(&self) -> SparsePoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| *e > 0)
            .map(|(e, c)| (e - 1, c * BigRational::from_integer((*e).into())))
            .collect();
        SparsePoly { terms }
    }

    pub fn scale(&self, k: &BigRational) -> SparsePoly {
        if k.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut map: BTreeMap<u64, BigRational> = self.terms.iter().cloned().collect();
        for (e, c) in &other.terms {
            *map.entry(*e).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(map)
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Minimum p-adic valuation over the coefficients.
    pub fn min_coeff_valuation(&self, p: u64) -> Option<i64> {
        self.terms.iter().map(|(_, c)| val_rat(c, p)).min()
    }

    /// `p^{-v} f` where `v` is the minimum coefficient valuation, so the
    /// result lies in `Z_p[x]` with some unit coefficient.
    pub fn primitive_part(&self, p: u64) -> SparsePoly {
        match self.min_coeff_valuation(p) {
            None | Some(0) => self.clone(),
            Some(v) => self.scale(&p_pow_rat(p, -v)),
        }
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.min_coeff_valuation(p).map_or(true, |v| v >= 0)
    }

    /// Coefficients reduced modulo `m` (a power of `p`); requires p-integral input.
    pub fn integral_terms(&self, m: &BigInt) -> Option<Vec<(u64, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| rat_mod(c, m).map(|r| (*e, r)))
            .collect()
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * num_traits::pow(x.clone(), *e as usize);
        }
        acc
    }

    /// Evaluation modulo `m` at an integer point; `None` if a denominator is
    /// not invertible.
    pub fn eval_mod(&self, x: &BigInt, m: &BigInt) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            acc += rat_mod(c, m)? * pow_mod(x, *e, m);
        }
        Some(modp(&acc, m))
    }

    /// `f(p^m x)` divided by the resulting minimal coefficient power of `p`.
    pub fn scale_substitute(&self, p: u64, m: i64) -> SparsePoly {
        let scaled = SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c * p_pow_rat(p, m * *e as i64)))
                .collect(),
        };
        scaled.primitive_part(p)
    }

    /// Like [`scale_substitute`](Self::scale_substitute), but drops the terms
    /// whose coefficient valuation after normalization is at least `cut`.
    /// The result agrees with the exact one modulo `p^cut` and never builds
    /// the huge powers `p^(m e)` of far-off terms.
    pub fn scale_substitute_truncated(&self, p: u64, m: i64, cut: i64) -> SparsePoly {
        let vals: Vec<i64> = self.terms.iter().map(|(e, c)| val_rat(c, p) + m * *e as i64).collect();
        let Some(&vmin) = vals.iter().min() else {
            return self.clone();
        };
        SparsePoly {
            terms: self
                .terms
                .iter()
                .zip(&vals)
                .filter(|(_, v)| **v - vmin < cut)
                .map(|((e, c), _)| (*e, c * p_pow_rat(p, m * *e as i64 - vmin)))
                .collect(),
        }
    }

    /// Replaces each positive exponent by `((α−1) mod (p−1)) + 1`, summing
    /// colliding coefficients. Agrees with `f` at every `(p−1)`-th root of unity.
    pub fn reduce_exponents_torsion(&self, p: u64) -> SparsePoly {
        let n = p - 1;
        let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let r = if *e == 0 { 0 } else { (e - 1) % n + 1 };
            *map.entry(r).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(map)
    }

    /// Coefficients `h_0..h_K` of `h(y) = f(r + p y)` modulo `p^N`, with
    /// `K = min(deg f, N − 1)`.
    pub fn taylor_shift_truncate(&self, r: &PadicNum, p: u64, n: u32) -> Result<Vec<BigInt>> {
        if r.prime() != p {
            return Err(Error::InvalidInput("prime mismatch".into()));
        }
        if !self.is_p_integral(p) {
            return Err(Error::PreconditionFailed("coefficients must lie in Z_p".into()));
        }
        let modulus = pow_big(p, n as u64);
        let rep = r.integral_rep(n)?;
        let deg = self.degree().unwrap_or(0);
        let kmax = deg.min(n.saturating_sub(1) as u64);
        let coeffs = self.integral_terms(&modulus).expect("p-integral");
        let mut out = Vec::with_capacity(kmax as usize + 1);
        for k in 0..=kmax {
            let mut s = BigInt::zero();
            for (e, a) in &coeffs {
                if *e < k {
                    continue;
                }
                let b = binomial(*e, k);
                s += a * b * pow_mod(&rep, e - k, &modulus);
            }
            out.push(modp(&(s * pow_big(p, k)), &modulus));
        }
        Ok(out)
    }
}

/// `p^k` as a rational, `k` of either sign.
pub(crate) fn p_pow_rat(p: u64, k: i64) -> BigRational {
    let pk = pow_big(p, k.unsigned_abs());
    if k >= 0 {
        BigRational::from_integer(pk)
    } else {
        BigRational::new(BigInt::one(), pk)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            if *e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}
