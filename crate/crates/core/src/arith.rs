//! Integer and modular helpers shared by the p-adic and polynomial code.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// p-adic valuation of a nonzero integer.
///
/// Panics on zero; callers treat zero as the infinite-valuation case themselves.
pub fn val_int(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Splits a nonzero integer as `p^v * rest` with `p` not dividing `rest`.
pub fn split_p(n: &BigInt, p: u64) -> (u64, BigInt) {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val_rat(q: &BigRational, p: u64) -> i64 {
    val_int(q.numer(), p) as i64 - val_int(q.denom(), p) as i64
}

/// Valuation of a `u64`, `u64::MAX` for zero.
pub fn val_u64(mut n: u64, p: u64) -> u64 {
    if n == 0 {
        return u64::MAX;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn pow_big(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Nonnegative residue of `a` modulo `m`.
pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    debug_assert!(!r.is_negative());
    r
}

/// Modular inverse, `None` when `a` is not invertible.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = modp(a, m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(modp(&e.x, m))
}

/// `base^exp mod m`, handling negative bases.
pub fn pow_mod(base: &BigInt, exp: u64, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    modp(base, m).modpow(&BigInt::from(exp), m)
}

/// Residue of a p-integral rational modulo `m` (a power of `p`).
///
/// Returns `None` when the denominator is not invertible modulo `m`.
pub fn rat_mod(q: &BigRational, m: &BigInt) -> Option<BigInt> {
    let inv = inv_mod(q.denom(), m)?;
    Some(modp(&(q.numer() * inv), m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn mult_order(a: u64, p: u64) -> u64 {
    let a = a % p;
    assert!(a != 0, "zero has no multiplicative order");
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % p as u128) as u64;
        k += 1;
    }
    k
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mut bb = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % m128;
        }
        bb = bb * bb % m128;
        e >>= 1;
    }
    b = r as u64;
    b
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Positive divisors of a nonzero integer, or `None` when trial division
/// would need to go past `limit`.
pub fn divisors_big(n: &BigInt, limit: u64) -> Option<Vec<BigUint>> {
    let mut m = n.magnitude().clone();
    if m.is_zero() {
        return None;
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut d = 2u64;
    loop {
        let db = BigUint::from(d);
        if &db * &db > m {
            break;
        }
        if d > limit {
            return None;
        }
        let mut e = 0;
        while (&m % &db).is_zero() {
            m /= &db;
            e += 1;
        }
        if e > 0 {
            factors.push((db, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut x = d.clone();
            next.push(x.clone());
            for _ in 0..e {
                x *= &f;
                next.push(x.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * (binomial(ni, ki) % BigInt::from(p)).to_u64().unwrap() % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-k+1)` for a signed integer `n`.
pub fn falling(n: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - BigInt::from(i);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Euler's totient of `p^i` for a prime `p`, `i >= 1`.
pub fn phi_prime_power(p: u64, i: u32) -> BigInt {
    pow_big(p, i as u64 - 1) * (p - 1)
}

/// Solves `a*k ≡ b (mod m)`; returns the least nonnegative solution and the
/// period of the solution set.
pub fn solve_linear_congruence(a: &BigInt, b: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    if m.is_one() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    let g = a.gcd(m);
    if !modp(b, &g).is_zero() {
        return None;
    }
    let m2 = m / &g;
    let a2 = modp(&(a / &g), &m2);
    let b2 = modp(&(b / &g), &m2);
    let inv = inv_mod(&a2, &m2)?;
    Some((modp(&(b2 * inv), &m2), m2))
}

/// Integer square test used by callers needing small-exponent root checks.
pub fn to_u64(x: &BigInt) -> Option<u64> {
    if x.sign() == Sign::Minus {
        return None;
    }
    x.to_u64()
}

/// Dense cyclotomic polynomial `Φ_d`, coefficients lowest degree first.
pub fn cyclotomic(d: u64) -> Vec<BigInt> {
    assert!(d >= 1);
    // x^d - 1
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = BigInt::from(-1);
    num[d as usize] = BigInt::one();
    for e in divisors(d) {
        if e == d {
            continue;
        }
        let phi_e = cyclotomic(e);
        num = dense_exact_div_monic(&num, &phi_e);
    }
    num
}

/// Exact division of integer polynomials by a monic divisor.
fn dense_exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let n = rem.len() - 1;
    let mut q = vec![BigInt::zero(); n - dn + 1];
    for i in (0..=n - dn).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// Remainder of dense rational polynomial division; divisor must be nonzero.
pub fn dense_rem_rat(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut den = den.to_vec();
    while den.last().is_some_and(|c| c.is_zero()) {
        den.pop();
    }
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem = num.to_vec();
    while rem.last().is_some_and(|c| c.is_zero()) {
        rem.pop();
    }
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    while rem.len() > dn {
        let top = rem.len() - 1;
        let c = &rem[top] / &lead;
        let shift = top - dn;
        for (j, dj) in den.iter().enumerate() {
            let t = &c * dj;
            rem[shift + j] -= t;
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    rem
}
