//! Closed-form and combinatorial bounds on the number of roots of
//! `(t+1)`-nomials over p-adic fields.

use crate::arith::{is_prime, pow_big, val_u64};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `p`, ramification index `e` and residue degree `f` of a finite extension
/// of `Q_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u64,
    pub e: u64,
    pub f: u64,
}

impl FieldParams {
    pub fn new(p: u64, e: u64, f: u64) -> Self {
        FieldParams { p, e, f }
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidInput(format!("{} is not prime", self.p)));
        }
        if self.e == 0 || self.f == 0 {
            return Err(Error::InvalidInput("e and f must be at least 1".into()));
        }
        Ok(())
    }

    /// Residue field size `q = p^f`.
    pub fn q(&self) -> BigInt {
        pow_big(self.p, self.f)
    }
}

/// `e / (e − 1)` with `e` Euler's number.
pub const LENSTRA_CONSTANT: f64 = std::f64::consts::E / (std::f64::consts::E - 1.0);

/// Real-root count of Descartes' rule, `2t`.
pub fn descartes_bound(t: u64) -> u64 {
    2 * t
}

/// Lenstra's general bound `c t^2 (q − 1)(1 + e log(e t / log p) / log p)`.
pub fn lenstra_bound(t: u64, params: &FieldParams) -> f64 {
    let q1 = (params.q() - 1u32).to_f64().unwrap_or(f64::INFINITY);
    let lp = (params.p as f64).ln();
    let e = params.e as f64;
    let tf = t as f64;
    LENSTRA_CONSTANT * tf * tf * q1 * (1.0 + e * (e * tf / lp).ln() / lp)
}

/// `(t² − t + 1)(q − 1)`, valid when `p > e + t`.
pub fn new_upper_bound(t: u64, params: &FieldParams) -> Result<BigInt> {
    if params.p <= params.e + t {
        return Err(Error::NotApplicable(format!(
            "requires p > e + t, have p = {}, e + t = {}",
            params.p,
            params.e + t
        )));
    }
    Ok(BigInt::from(t * t - t + 1) * (params.q() - 1u32))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    /// `(2t − 1)(q − 1)`
    pub value: BigInt,
    /// `t(q − 1)`, the count for polynomials whose roots are all regular
    pub regular: BigInt,
}

pub fn lower_bound(t: u64, q: &BigInt) -> Result<LowerBound> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be at least 1".into()));
    }
    let q1 = q - 1u32;
    Ok(LowerBound { value: BigInt::from(2 * t - 1) * &q1, regular: BigInt::from(t) * q1 })
}

/// Enumeration limits for `d_t(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtCaps {
    pub max_m: u64,
    pub max_t: u64,
}

impl Default for DtCaps {
    fn default() -> Self {
        DtCaps { max_m: 40, max_t: 6 }
    }
}

fn primes_upto(m: u64) -> Vec<u64> {
    (2..=m).filter(|&q| is_prime(q)).collect()
}

/// lcm of all products of at most `t` distinct integers in `1..=m`, by subset
/// enumeration. Each product is tracked as a vector of prime exponents so the
/// lcm is a running maximum.
pub fn d_t(t: u64, m: u64) -> Result<BigInt> {
    d_t_capped(t, m, &DtCaps::default())
}

pub fn d_t_capped(t: u64, m: u64, caps: &DtCaps) -> Result<BigInt> {
    if m > caps.max_m || t > caps.max_t {
        return Err(Error::CapExceeded(format!(
            "d_t enumeration limited to m <= {}, t <= {}",
            caps.max_m, caps.max_t
        )));
    }
    let primes = primes_upto(m);
    let vals: Vec<Vec<u32>> = (1..=m).map(|i| primes.iter().map(|&q| val_u64(i, q) as u32).collect()).collect();
    let mut best = vec![0u32; primes.len()];
    let mut cur = vec![0u32; primes.len()];
    fn rec(start: usize, left: u64, vals: &[Vec<u32>], cur: &mut [u32], best: &mut [u32]) {
        for (b, c) in best.iter_mut().zip(cur.iter()) {
            *b = (*b).max(*c);
        }
        if left == 0 {
            return;
        }
        for i in start..vals.len() {
            for (c, v) in cur.iter_mut().zip(&vals[i]) {
                *c += v;
            }
            rec(i + 1, left - 1, vals, cur, best);
            for (c, v) in cur.iter_mut().zip(&vals[i]) {
                *c -= v;
            }
        }
    }
    rec(0, t, &vals, &mut cur, &mut best);
    Ok(primes
        .iter()
        .zip(&best)
        .fold(BigInt::one(), |acc, (&q, &k)| acc * pow_big(q, u64::from(k))))
}

/// `v_p(d_t(m))` in closed form: the sum of the `t` largest `v_p(i)`, `i ≤ m`.
pub fn vp_d_t(p: u64, t: u64, m: u64) -> u64 {
    let mut left = t;
    let mut total = 0;
    let mut level = 0u32;
    while pow_big(p, u64::from(level) + 1) <= BigInt::from(m) {
        level += 1;
    }
    let mut k = level;
    loop {
        // integers with v_p exactly k
        let pk = p.checked_pow(k).unwrap_or(u64::MAX);
        let count = m / pk - m / pk.saturating_mul(p);
        let take = count.min(left);
        total += take * u64::from(k);
        left -= take;
        if left == 0 || k == 0 {
            break;
        }
        k -= 1;
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LenstraC {
    pub value: u64,
    pub rhs: String,
    /// Last `m` scanned.
    pub scanned_to: u64,
    /// Whether the margin `m r − v_p(d_t(m)) − rhs` was strictly increasing on
    /// the final `run_out` steps. Jumps of `v_p(d_t)` at multiples of `p` can
    /// break strict growth without affecting the answer.
    pub strictly_increasing_run_out: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub run_out: u64,
    pub cap: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { run_out: 20, cap: 1_000_000 }
    }
}

/// `max{m ≥ 0 : m r − v_p(d_t(m)) ≤ max_{0≤i≤t} (i r − v_p(i!))}`.
///
/// The scan stops once `m` is past both the last satisfying `m` plus the
/// run-out and a point beyond which `m r − t ⌊log_p m⌋` stays above the right
/// side; since `v_p(d_t(m)) ≤ t ⌊log_p m⌋` no later `m` can satisfy it.
pub fn lenstra_c(p: u64, t: u64, r: &BigRational, cfg: &ScanConfig) -> Result<LenstraC> {
    if !r.is_positive() {
        return Err(Error::InvalidInput("r must be positive".into()));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let q = |n: u64| BigRational::from_integer(BigInt::from(n));
    let mut rhs = BigRational::zero();
    let mut fact_val = 0u64;
    for i in 0..=t {
        if i > 0 {
            fact_val += val_u64(i, p);
        }
        let v = r * q(i) - q(fact_val);
        if v > rhs {
            rhs = v;
        }
    }
    // safe point: for m in [p^k, p^{k+1}) the margin is at least p^k r − t k − rhs
    let mut k = 0u32;
    let safe = loop {
        let pk = pow_big(p, u64::from(k));
        let lower = BigRational::from_integer(pk.clone()) * r - q(t * u64::from(k));
        let growth = BigRational::from_integer(pk.clone() * (p - 1)) * r;
        if lower > rhs && growth >= q(t) {
            break pk;
        }
        k += 1;
        if k > 64 {
            return Err(Error::ScanWindowExceeded("no safe stopping point below p^64".into()));
        }
    };
    let safe = safe.to_u64().ok_or_else(|| Error::ScanWindowExceeded("safe point overflows".into()))?;
    let margin = |m: u64| r * q(m) - q(vp_d_t(p, t, m)) - &rhs;
    let mut best = 0u64;
    let mut m = 0u64;
    let mut history: Vec<BigRational> = Vec::new();
    loop {
        let mg = margin(m);
        if !mg.is_positive() {
            best = m;
        }
        history.push(mg);
        if history.len() > cfg.run_out as usize + 1 {
            history.remove(0);
        }
        if m >= safe && m >= best + cfg.run_out {
            break;
        }
        m += 1;
        if m > cfg.cap {
            return Err(Error::ScanWindowExceeded(format!("scan passed the cap {}", cfg.cap)));
        }
    }
    let strictly = history.windows(2).all(|w| w[1] > w[0]);
    Ok(LenstraC { value: best, rhs: rhs.to_string(), scanned_to: m, strictly_increasing_run_out: strictly })
}
