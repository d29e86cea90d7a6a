//! Exact multiplicities at Teichmüller points and at rational points.

use crate::arith::{cyclotomic, dense_rem_rat, divisors_big, rat_mod, val_rat};
use crate::sparsepoly::SparsePoly;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

const TRIAL_LIMIT: u64 = 1_000_000;
const MAX_COEFF_BITS: u64 = 64;
const MAX_EVAL_BITS: u64 = 1 << 24;

pub(crate) struct ExactAnalysis<'a> {
    g: &'a SparsePoly,
    p: u64,
    derivs: Vec<SparsePoly>,
    torsion: HashMap<u64, u32>,
    rational: Option<Vec<BigRational>>,
}

impl<'a> ExactAnalysis<'a> {
    pub fn new(g: &'a SparsePoly, p: u64) -> Self {
        // a (t+1)-nomial has nonzero roots of multiplicity at most t
        let t = g.terms().len().saturating_sub(1);
        let mut derivs = vec![g.clone()];
        for _ in 0..t {
            let d = derivs.last().unwrap().derivative();
            if d.is_zero() {
                break;
            }
            derivs.push(d);
        }
        ExactAnalysis { g, p, derivs, torsion: HashMap::new(), rational: None }
    }

    /// Multiplicity of `g` at the Teichmüller points of exact order `d`.
    pub fn torsion_multiplicity(&mut self, d: u64) -> u32 {
        if let Some(&m) = self.torsion.get(&d) {
            return m;
        }
        let phi: Vec<BigRational> = cyclotomic(d).into_iter().map(BigRational::from_integer).collect();
        let mut mult = 0;
        for h in &self.derivs {
            let red = h.reduce_exponents_torsion(self.p);
            let deg = red.degree().unwrap_or(0) as usize;
            let mut dense = vec![BigRational::zero(); deg + 1];
            for (e, c) in red.terms() {
                dense[*e as usize] = c.clone();
            }
            if !dense_rem_rat(&dense, &phi).is_empty() {
                break;
            }
            mult += 1;
        }
        self.torsion.insert(d, mult);
        mult
    }

    fn rational_roots(&mut self) -> &[BigRational] {
        if self.rational.is_none() {
            self.rational = Some(find_rational_roots(self.g));
        }
        self.rational.as_deref().unwrap()
    }

    /// Rational roots `x` with `v_p(x) = m` and `x / p^m ≡ r mod p`, excluding ±1
    /// (those are Teichmüller points), with exact multiplicities.
    pub fn rational_in_disk(&mut self, m: i64, r: u64) -> Vec<(BigRational, u32)> {
        let p = self.p;
        let pb = BigInt::from(p);
        let roots: Vec<BigRational> = self
            .rational_roots()
            .iter()
            .filter(|x| {
                if x.abs().is_one() || val_rat(x, p) != m {
                    return false;
                }
                let y = *x / crate::sparsepoly::p_pow_rat(p, m);
                rat_mod(&y, &pb) == Some(BigInt::from(r))
            })
            .cloned()
            .collect();
        roots
            .into_iter()
            .map(|x| {
                let mult = self.derivs.iter().take_while(|h| h.eval_rational(&x).is_zero()).count() as u32;
                (x, mult)
            })
            .collect()
    }
}

/// Rational roots of `g` (constant term nonzero) via the rational root test,
/// skipped when the integer model has coefficients too large to factor or the
/// exact evaluation would be too expensive.
fn find_rational_roots(g: &SparsePoly) -> Vec<BigRational> {
    let mut l = BigInt::one();
    for (_, c) in g.terms() {
        l = l.lcm(c.denom());
    }
    let ints: Vec<(u64, BigInt)> = g
        .terms()
        .iter()
        .map(|(e, c)| (*e, (c * BigRational::from_integer(l.clone())).to_integer()))
        .collect();
    let (Some(first), Some(last)) = (ints.first(), ints.last()) else {
        return Vec::new();
    };
    if first.0 != 0 || first.1.bits() > MAX_COEFF_BITS || last.1.bits() > MAX_COEFF_BITS {
        return Vec::new();
    }
    let (Some(nums), Some(dens)) = (divisors_big(&first.1, TRIAL_LIMIT), divisors_big(&last.1, TRIAL_LIMIT)) else {
        return Vec::new();
    };
    let deg = last.0;
    let mut out = Vec::new();
    for a in &nums {
        for b in &dens {
            if !a.gcd(b).is_one() {
                continue;
            }
            let bits = a.bits().max(b.bits()).max(1);
            if deg.saturating_mul(bits) > MAX_EVAL_BITS {
                continue;
            }
            for s in [1i32, -1] {
                let x = BigRational::new(
                    BigInt::from_biguint(if s > 0 { num_bigint::Sign::Plus } else { num_bigint::Sign::Minus }, a.clone()),
                    BigInt::from(BigUint::clone(b)),
                );
                if quick_nonroot(&ints, &x) {
                    continue;
                }
                if g.eval_rational(&x).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out.sort();
    out
}

/// Cheap modular filter: a nonzero value modulo a prime not dividing the
/// denominator proves `x` is not a root.
fn quick_nonroot(ints: &[(u64, BigInt)], x: &BigRational) -> bool {
    const Q: u64 = 2_147_483_647;
    let q = BigInt::from(Q);
    let Some(xm) = rat_mod(x, &q) else {
        return false;
    };
    let mut acc = BigInt::zero();
    for (e, c) in ints {
        acc += c * xm.modpow(&BigInt::from(*e), &q);
    }
    !(acc % &q).is_zero()
}

/// Integer `p`-th root of a nonnegative integer, when exact.
pub(crate) fn exact_root(n: &BigInt, k: u64) -> Option<BigInt> {
    let r = n.abs().nth_root(k as u32);
    if num_traits::pow(r.clone(), k as usize) == n.abs() {
        if n.is_negative() {
            // k is odd in all callers
            Some(-r)
        } else {
            Some(r)
        }
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_double_roots() {
        let g = SparsePoly::from_ints(&[(0, 9), (2, -10), (20, 1)]);
        let mut ex = ExactAnalysis::new(&g, 3);
        assert_eq!(ex.torsion_multiplicity(1), 2);
        assert_eq!(ex.torsion_multiplicity(2), 2);
        let g = SparsePoly::from_ints(&[(0, 625), (4, -626), (2504, 1)]);
        let mut ex = ExactAnalysis::new(&g, 5);
        for d in [1, 2, 4] {
            assert_eq!(ex.torsion_multiplicity(d), 2);
        }
    }

    #[test]
    fn rational_roots_in_disks() {
        // (x - 2)^2 (x + 3) = x^3 - x^2 - 8x + 12; both roots are 2 mod 5
        let g = SparsePoly::from_ints(&[(0, 12), (1, -8), (2, -1), (3, 1)]);
        let q = |n: i64| BigRational::from_integer(n.into());
        let mut ex = ExactAnalysis::new(&g, 5);
        assert_eq!(ex.rational_in_disk(0, 2), vec![(q(-3), 1), (q(2), 2)]);
        assert!(ex.rational_in_disk(0, 3).is_empty());
        let mut ex = ExactAnalysis::new(&g, 3);
        assert_eq!(ex.rational_in_disk(1, 2), vec![(q(-3), 1)]);
        assert_eq!(ex.rational_in_disk(0, 2), vec![(q(2), 2)]);
    }

    #[test]
    fn integer_roots() {
        assert_eq!(exact_root(&BigInt::from(-27), 3), Some(BigInt::from(-3)));
        assert_eq!(exact_root(&BigInt::from(28), 3), None);
    }
}
