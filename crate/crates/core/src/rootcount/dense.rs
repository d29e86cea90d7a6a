//! Dense polynomial helpers modulo `p^N` used by residue refinement.

use crate::arith::{modp, pow_big};
use num_bigint::BigInt;
use num_traits::Zero;

/// Coefficients of `H(c + p w)` modulo `m = p^n`.
pub fn shift_scaled(h: &[BigInt], c: &BigInt, p: u64, n: u32) -> Vec<BigInt> {
    let m = pow_big(p, n as u64);
    let mut a: Vec<BigInt> = h.iter().map(|x| modp(x, &m)).collect();
    // Taylor shift by c (repeated synthetic division)
    let len = a.len();
    for i in 0..len {
        for j in (i..len.saturating_sub(1)).rev() {
            let t = &a[j + 1] * c;
            a[j] = modp(&(&a[j] + t), &m);
        }
    }
    let mut pk = BigInt::from(1);
    for x in a.iter_mut() {
        *x = modp(&(&*x * &pk), &m);
        pk *= p;
        if pk >= m {
            pk = modp(&pk, &m);
        }
    }
    trim(a)
}

/// Quotient of `H` by `(z − c)` modulo `m`, dropping the remainder.
pub fn deflate(h: &[BigInt], c: &BigInt, m: &BigInt) -> Vec<BigInt> {
    if h.len() <= 1 {
        return Vec::new();
    }
    let n = h.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        carry = modp(&(&h[k + 1] + &carry * c), m);
        q[k] = carry.clone();
    }
    trim(q)
}

/// Multiplicity of `y` as a root of `H mod p`.
pub fn residue_multiplicity(h: &[BigInt], y: u64, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<BigInt> = h.iter().map(|x| modp(x, &pb)).collect();
    let yb = BigInt::from(y);
    let len = a.len();
    for i in 0..len {
        for j in (i..len - 1).rev() {
            let t = &a[j + 1] * &yb;
            a[j] = modp(&(&a[j] + t), &pb);
        }
        if !a[i].is_zero() {
            return i;
        }
    }
    len
}

pub fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

pub fn to_terms(h: &[BigInt]) -> Vec<(u64, BigInt)> {
    h.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u64, c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn shift_matches_expansion() {
        // (1 + 3w)^2 - 1 = 6w + 9w^2
        let h = shift_scaled(&v(&[-1, 0, 1]), &BigInt::from(1), 3, 5);
        assert_eq!(h, v(&[0, 6, 9]));
    }

    #[test]
    fn deflation() {
        // z^2 - 1 = (z - 1)(z + 1)
        let m = BigInt::from(125);
        assert_eq!(deflate(&v(&[-1, 0, 1]), &BigInt::from(1), &m), v(&[1, 1]));
    }

    #[test]
    fn multiplicity_mod_p() {
        // (x - 1)^2 (x + 1) = x^3 - x^2 - x + 1
        let h = v(&[1, -1, -1, 1]);
        assert_eq!(residue_multiplicity(&h, 1, 5), 2);
        assert_eq!(residue_multiplicity(&h, 4, 5), 1);
        assert_eq!(residue_multiplicity(&h, 2, 5), 0);
    }
}
