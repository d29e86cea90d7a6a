//! Generalized and confluent Vandermonde determinants, their quotients by the
//! standard ones, and the binomial determinants `W_β`.

mod multipoly;

pub use multipoly::{det, det_multipoly, Monomial, MultiPoly};

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;

/// Strictly increasing positive exponents `α_1 < … < α_t`; `α_0 = 0` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(alphas: Vec<u64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidInput("exponent vector must be nonempty".into()));
        }
        if alphas[0] == 0 || alphas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!("exponents must be positive and increasing: {alphas:?}")));
        }
        Ok(ExponentVector(alphas))
    }

    /// The standard vector `(1, 2, …, t)`.
    pub fn standard(t: usize) -> Self {
        ExponentVector((1..=t as u64).collect())
    }

    pub fn t(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    fn with_zero(&self) -> Vec<u64> {
        std::iter::once(0).chain(self.0.iter().copied()).collect()
    }
}

/// Block sizes `(s_0, …, s_m)`, each at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidInput(format!("composition parts must be positive: {parts:?}")));
        }
        Ok(Composition(parts))
    }

    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All compositions of `n`.
    pub fn all(n: u32) -> Vec<Composition> {
        assert!(n >= 1);
        let mut out = Vec::new();
        for mask in 0..(1u32 << (n - 1)) {
            let mut parts = Vec::new();
            let mut run = 1;
            for i in 0..n - 1 {
                if mask & (1 << i) != 0 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            out.push(Composition(parts));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

fn check_size(alpha: &ExponentVector, s: &Composition) -> Result<()> {
    if s.size() as usize != alpha.t() + 1 {
        return Err(Error::InvalidInput(format!(
            "|s| = {} but t + 1 = {}",
            s.size(),
            alpha.t() + 1
        )));
    }
    Ok(())
}

fn var_pow(i: usize, e: u64) -> MultiPoly {
    let mut exps = vec![0u32; i + 1];
    exps[i] = u32::try_from(e).expect("exponent fits");
    MultiPoly::monomial(Monomial::new(exps), BigInt::one())
}

/// `M_α^s(x_0, …, x_m)` with the scaled-derivative rows `C(α_j, k) x^{α_j − k}`.
pub fn confluent_matrix(alpha: &ExponentVector, s: &Composition) -> Vec<Vec<MultiPoly>> {
    let cols = alpha.with_zero();
    let mut rows = Vec::new();
    for (i, &si) in s.parts().iter().enumerate() {
        for k in 0..si as u64 {
            rows.push(
                cols.iter()
                    .map(|&a| {
                        if a < k {
                            MultiPoly::zero()
                        } else {
                            var_pow(i, a - k).scale(&binomial(a, k))
                        }
                    })
                    .collect(),
            );
        }
    }
    rows
}

pub fn vand_det(alpha: &ExponentVector) -> MultiPoly {
    det_multipoly(&confluent_matrix(alpha, &Composition::ones(alpha.t() + 1)))
}

pub fn confluent_vand_det(alpha: &ExponentVector, s: &Composition) -> Result<MultiPoly> {
    check_size(alpha, s)?;
    Ok(det_multipoly(&confluent_matrix(alpha, s)))
}

/// `∏_{i<j} (x_j − x_i)^{s_i s_j}`.
pub fn standard_confluent(s: &Composition) -> MultiPoly {
    let parts = s.parts();
    let mut acc = MultiPoly::one();
    for j in 0..parts.len() {
        for i in 0..j {
            let d = MultiPoly::var(j) - MultiPoly::var(i);
            acc = &acc * &d.pow(parts[i] * parts[j]);
        }
    }
    acc
}

/// `P_α^s = V_α^s / V_st^s`, by exact division.
pub fn p_factor(alpha: &ExponentVector, s: &Composition) -> Result<MultiPoly> {
    let v = confluent_vand_det(alpha, s)?;
    v.div_exact(&standard_confluent(s))
}

/// Checks `V_α^ŝ = [δ^{s_k}] V_α^s̄(…, x_k, x_k + δ, …)`, and that the lower
/// powers of `δ` vanish.
pub fn confluent_limit_check(alpha: &ExponentVector, s: &Composition, k: usize) -> Result<bool> {
    if s.size() as usize != alpha.t() {
        return Err(Error::InvalidInput(format!("|s| must equal t = {}", alpha.t())));
    }
    let parts = s.parts();
    if k >= parts.len() {
        return Err(Error::InvalidInput(format!("index {k} out of range")));
    }
    let m = parts.len() - 1;
    let mut hat = parts.to_vec();
    hat[k] += 1;
    let mut bar = parts.to_vec();
    bar.insert(k + 1, 1);
    let lhs = confluent_vand_det(alpha, &Composition(hat))?;
    let vbar = confluent_vand_det(alpha, &Composition(bar))?;
    let delta = m + 1;
    let images: Vec<MultiPoly> = (0..m + 2)
        .map(|i| match i.cmp(&(k + 1)) {
            std::cmp::Ordering::Less => MultiPoly::var(i),
            std::cmp::Ordering::Equal => MultiPoly::var(k) + MultiPoly::var(delta),
            std::cmp::Ordering::Greater => MultiPoly::var(i - 1),
        })
        .collect();
    let shifted = vbar.substitute(&images);
    let sk = parts[k];
    let lower_vanish = (0..sk).all(|j| shifted.coeff_in_var(delta, j).is_zero());
    Ok(lower_vanish && shifted.coeff_in_var(delta, sk) == lhs)
}

/// Checks `P_α^s(x_0, …, x_m) = P_α(x_0 (s_0 times), …, x_m (s_m times))`.
pub fn specialization_check(alpha: &ExponentVector, s: &Composition) -> Result<bool> {
    check_size(alpha, s)?;
    let full = p_factor(alpha, &Composition::ones(alpha.t() + 1))?;
    let images: Vec<MultiPoly> = s
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &si)| std::iter::repeat(MultiPoly::var(i)).take(si as usize))
        .collect();
    Ok(full.substitute(&images) == p_factor(alpha, s)?)
}

fn falling_poly(var: usize, b: u64) -> MultiPoly {
    let x = MultiPoly::var(var);
    let mut acc = MultiPoly::one();
    for i in 0..b {
        acc = &acc * &(x.clone() - MultiPoly::constant(i));
    }
    acc
}

pub enum WValue {
    /// `β_1! ⋯ β_t! · W_β` in the variables `x_1, …, x_t`.
    Symbolic(MultiPoly),
    Value(BigRational),
}

/// `W_β = det(C(x_i, β_j))`, symbolically (scaled by `∏ β_j!`) or evaluated.
pub fn binom_det_w(beta: &[u64], eval_at: Option<&[BigInt]>) -> WValue {
    match eval_at {
        None => WValue::Symbolic(w_scaled(beta)),
        Some(a) => WValue::Value(w_value(beta, a)),
    }
}

pub fn w_scaled(beta: &[u64]) -> MultiPoly {
    let m: Vec<Vec<MultiPoly>> = (1..=beta.len())
        .map(|i| beta.iter().map(|&b| falling_poly(i, b)).collect())
        .collect();
    det_multipoly(&m)
}

fn binom_generalized(a: &BigInt, b: u64) -> BigRational {
    BigRational::new(crate::arith::falling(a, b), factorial(b))
}

pub fn w_value(beta: &[u64], a: &[BigInt]) -> BigRational {
    assert_eq!(beta.len(), a.len(), "one evaluation point per row");
    let m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|ai| beta.iter().map(|&b| binom_generalized(ai, b)).collect())
        .collect();
    if m.is_empty() {
        return BigRational::one();
    }
    det(
        &m,
        BigRational::zero(),
        BigRational::one(),
        |x| x.is_zero(),
        |x, y| x * y,
        |acc, t, neg| if neg { acc - t } else { acc + t },
    )
}

fn w_integer(beta: &[u64], alpha: &[u64]) -> BigInt {
    let pts: Vec<BigInt> = alpha.iter().map(|&a| BigInt::from(a)).collect();
    let v = w_value(beta, &pts);
    assert!(v.is_integer(), "W at nonnegative integers is an integer");
    v.to_integer()
}

/// `Q_β` with `β!·W_β = 1!⋯t!·W_st·Q_β`.
pub fn q_factor(beta: &[u64]) -> Result<MultiPoly> {
    if beta.is_empty() || beta[0] == 0 || beta.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!("need 1 <= b_1 < ... < b_t: {beta:?}")));
    }
    let st: Vec<u64> = (1..=beta.len() as u64).collect();
    w_scaled(beta).div_exact(&w_scaled(&st))
}

/// `x_1 ⋯ x_t ∏_{i<j} (x_j − x_i)` in the variables `x_1, …, x_t`.
pub fn w_standard_closed_form(t: usize) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for i in 1..=t {
        acc = &acc * &MultiPoly::var(i);
    }
    for j in 1..=t {
        for i in 1..j {
            acc = &acc * &(MultiPoly::var(j) - MultiPoly::var(i));
        }
    }
    acc
}

/// Strictly increasing `t`-tuples with entries in `[lo, hi]`.
pub fn increasing_tuples(t: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    fn rec(t: usize, lo: u64, hi: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        let mut a = lo;
        while a <= hi {
            cur.push(a);
            rec(t, a + 1, hi, cur, out);
            cur.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    rec(t, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// Memoizes `P_β^s` across expansion checks.
#[derive(Default)]
pub struct PCache {
    map: HashMap<(Vec<u64>, Vec<u32>), MultiPoly>,
}

impl PCache {
    pub fn get(&mut self, alpha: &ExponentVector, s: &Composition) -> Result<MultiPoly> {
        let key = (alpha.0.clone(), s.0.clone());
        if let Some(p) = self.map.get(&key) {
            return Ok(p.clone());
        }
        let p = p_factor(alpha, s)?;
        self.map.insert(key, p.clone());
        Ok(p)
    }
}

/// Checks `P_α^s(1 + x) = Σ_β W_β(α) P_β^s(x)` over `1 <= β_1 < … < β_t <= α_t`.
pub fn binom_expansion_check(alpha: &ExponentVector, s: &Composition, cap: u64) -> Result<bool> {
    binom_expansion_check_cached(alpha, s, cap, &mut PCache::default())
}

pub fn binom_expansion_check_cached(
    alpha: &ExponentVector,
    s: &Composition,
    cap: u64,
    cache: &mut PCache,
) -> Result<bool> {
    check_size(alpha, s)?;
    let top = *alpha.values().last().expect("nonempty");
    if top > cap {
        return Err(Error::CapExceeded(format!("alpha_t = {top} exceeds cap {cap}")));
    }
    let shift: Vec<MultiPoly> = (0..s.parts().len())
        .map(|i| MultiPoly::var(i) + MultiPoly::one())
        .collect();
    let lhs = cache.get(alpha, s)?.substitute(&shift);
    let mut rhs = MultiPoly::zero();
    for beta in increasing_tuples(alpha.t(), 1, top) {
        let w = w_integer(&beta, alpha.values());
        if w.is_zero() {
            continue;
        }
        let pb = cache.get(&ExponentVector(beta), s)?;
        rhs = rhs + pb.scale(&w);
    }
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, Serialize)]
pub struct GridRow {
    pub alpha: Vec<u64>,
    pub s: Vec<u32>,
    pub p_nonnegative: bool,
    pub p_nonzero: bool,
    pub v_degree_ok: bool,
    pub p_degree_ok: bool,
    /// `None` when no part of `s` exceeds 1 (nothing to check).
    pub confluent_limit: Option<bool>,
    pub specialization: bool,
    pub binom_expansion: bool,
}

impl GridRow {
    pub fn passed(&self) -> bool {
        self.p_nonnegative
            && self.v_degree_ok
            && self.p_degree_ok
            && self.confluent_limit != Some(false)
            && self.specialization
            && self.binom_expansion
    }
}

/// Runs every identity check for `t <= t_max`, `α_t <= alpha_max`, and all
/// compositions of `t + 1`.
pub fn identity_grid(t_max: usize, alpha_max: u64) -> Result<Vec<GridRow>> {
    let mut cache = PCache::default();
    let mut rows = Vec::new();
    for t in 1..=t_max {
        for a in increasing_tuples(t, 1, alpha_max) {
            let alpha = ExponentVector(a);
            for s in Composition::all(t as u32 + 1) {
                rows.push(grid_row(&alpha, &s, alpha_max, &mut cache)?);
            }
        }
    }
    Ok(rows)
}

pub fn grid_row(alpha: &ExponentVector, s: &Composition, cap: u64, cache: &mut PCache) -> Result<GridRow> {
    let t = alpha.t() as u64;
    let v = confluent_vand_det(alpha, s)?;
    let p = cache.get(alpha, s)?;
    let sum_sq: u64 = s.parts().iter().map(|&x| (x as u64) * (x as u64 - 1) / 2).sum();
    let v_deg = alpha.sum() - sum_sq;
    let p_deg = alpha.sum() - t * (t + 1) / 2;
    let mut limit = None;
    for (k, &sk) in s.parts().iter().enumerate() {
        if sk >= 2 {
            let mut base = s.parts().to_vec();
            base[k] -= 1;
            let ok = confluent_limit_check(alpha, &Composition(base), k)?;
            limit = Some(limit.unwrap_or(true) && ok);
        }
    }
    Ok(GridRow {
        alpha: alpha.values().to_vec(),
        s: s.parts().to_vec(),
        p_nonnegative: p.all_coeffs_nonnegative(),
        p_nonzero: !p.is_zero(),
        v_degree_ok: v.homogeneous_degree() == Some(v_deg),
        p_degree_ok: p.homogeneous_degree() == Some(p_deg),
        confluent_limit: limit,
        specialization: specialization_check(alpha, s)?,
        binom_expansion: binom_expansion_check_cached(alpha, s, cap, cache)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WRow {
    pub beta: Vec<u64>,
    pub w_integral: bool,
    pub q_integral: bool,
    pub w_degree_ok: bool,
    pub q_degree_ok: bool,
}

impl WRow {
    pub fn passed(&self) -> bool {
        self.w_integral && self.q_integral && self.w_degree_ok && self.q_degree_ok
    }
}

/// Checks for `W_β` and `Q_β` with `t <= t_max`, `β_t <= beta_max`.
pub fn w_grid(t_max: usize, beta_max: u64) -> Result<Vec<WRow>> {
    let mut rows = Vec::new();
    for t in 1..=t_max {
        for beta in increasing_tuples(t, 1, beta_max) {
            let w = w_scaled(&beta);
            let q = q_factor(&beta)?;
            let sum: u64 = beta.iter().sum();
            let tt = t as u64;
            // integrality: the scaled determinant agrees with the rational one
            // at sample points
            let pts: Vec<BigInt> = (0..t).map(|i| BigInt::from(3 * i as i64 - 2)).collect();
            let mut shifted = vec![BigInt::zero()];
            shifted.extend(pts.iter().cloned());
            let scale: BigInt = beta.iter().map(|&b| factorial(b)).product();
            let w_ok = BigRational::from_integer(w.eval(&shifted)) == w_value(&beta, &pts) * BigRational::from_integer(scale);
            rows.push(WRow {
                beta: beta.clone(),
                w_integral: w_ok,
                q_integral: !q.is_zero(),
                w_degree_ok: w.degree() == Some(sum),
                q_degree_ok: q.degree() == Some(sum - tt * (tt + 1) / 2),
            });
        }
    }
    Ok(rows)
}
