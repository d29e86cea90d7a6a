//! Builders for polynomials with many roots: the sharp trinomial family and
//! the inductive `f_t` family with `(2t − 1)(q − 1)` simple roots.

use crate::arith::{is_prime, pow_big, split_p};
use crate::error::{Error, Result};
use crate::padic::{exponent_sequence, hensel_lift, lift_int, primitive_int_terms, PadicNum, Valuation};
use crate::rootcount::{count_roots, Certificate, CountOptions, RootReport};
use crate::sparsepoly::{newton_polygon, p_pow_rat, SparsePoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_EXPONENT_CAP: u64 = 1_000_000;
/// Exponent limit for the inductive construction. The approximate-root test
/// can need `α` of size about `p^(2 v(g'(r0)) + 1)`.
pub const DEFAULT_ALPHA_CAP: u64 = 1_000_000_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalOptions {
    /// Exponent candidates tried per starting point, and in the direct scan.
    pub alpha_window: usize,
    /// Values of the unit part of `ε` tried.
    pub eps_window: u64,
    pub prec: u32,
    pub depth: u32,
    /// Limit for the trinomial family.
    pub exponent_cap: u64,
    /// Limit for exponents chosen by the inductive construction.
    pub alpha_cap: u64,
}

impl Default for ExtremalOptions {
    fn default() -> Self {
        ExtremalOptions {
            alpha_window: 64,
            eps_window: 32,
            prec: 128,
            depth: 8,
            exponent_cap: DEFAULT_EXPONENT_CAP,
            alpha_cap: DEFAULT_ALPHA_CAP,
        }
    }
}

impl ExtremalOptions {
    fn count_options(&self) -> CountOptions {
        CountOptions { prec: self.prec, max_depth: self.depth, ..CountOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Lower limits on the exponent `α` used in one inductive step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `2(γ + α_t)`
    pub hensel: i64,
    /// `max(2(γ + α_t), 2γ')`
    pub separation: i64,
    /// `2(α_t + γ + γ') + 1`, from the strict inequality
    pub combined: i64,
    pub binding: String,
}

impl Thresholds {
    fn floor(&self) -> i64 {
        self.hensel.max(self.separation).max(self.combined)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepLog {
    /// Index of the polynomial built in this step.
    pub t: u64,
    pub gamma: i64,
    pub gamma_prime: i64,
    pub thresholds: Thresholds,
    pub r0: u64,
    pub alpha: u64,
    pub c: i64,
    pub epsilon: String,
    pub conditions: Vec<ConditionCheck>,
    pub newton_slopes: Vec<String>,
    pub alpha_trace: Vec<String>,
    pub eps_trace: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalBuildReport {
    pub t: u64,
    pub q: u64,
    pub poly: SparsePoly,
    pub target_count: u64,
    pub report: RootReport,
    pub construction_log: Vec<StepLog>,
}

fn check_odd_prime(q: u64) -> Result<()> {
    if q == 2 || !is_prime(q) {
        return Err(Error::InvalidInput(format!("q = {q} must be an odd prime")));
    }
    Ok(())
}

/// `x^{(q−1)(1+q^{q−1})} − (1+q^{q−1}) x^{q−1} + q^{q−1}`, which has at least
/// `3(q − 1)` roots counted with multiplicity.
pub fn trinomial_example(q: u64, cap: u64) -> Result<SparsePoly> {
    check_odd_prime(q)?;
    let big = pow_big(q, q - 1);
    let top = (BigInt::one() + &big) * (q - 1);
    let top = top
        .to_u64()
        .filter(|&e| e <= cap)
        .ok_or_else(|| Error::CapExceeded(format!("exponent {top} exceeds the cap {cap}")))?;
    Ok(SparsePoly::from_big_ints(&[(0, big.clone()), (q - 1, -(BigInt::one() + big)), (top, BigInt::one())]))
}

pub fn build_f1(q: u64) -> Result<SparsePoly> {
    check_odd_prime(q)?;
    Ok(SparsePoly::from_ints(&[(0, -1), (q - 1, 1)]))
}

/// `f(x/p) / f(1/p)`, computed as `h(x)/u` with
/// `h(x) = Σ a_i p^{α_t − α_i} x^{α_i}` and `u = h(1)`.
pub fn hat_f(f: &SparsePoly, p: u64) -> Result<SparsePoly> {
    let top = f.degree().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    let h: Vec<(u64, BigRational)> =
        f.terms().iter().map(|(e, c)| (*e, c * p_pow_rat(p, (top - e) as i64))).collect();
    let u: BigRational = h.iter().map(|(_, c)| c.clone()).sum();
    if u.is_zero() {
        return Err(Error::PreconditionFailed("f(1/p) = 0".into()));
    }
    SparsePoly::new(h.into_iter().map(|(e, c)| (e, c / &u)).collect())
}

/// Certified simple roots of valuation `i` with first digit 1.
fn first_digit_one(report: &RootReport, i: i64) -> usize {
    report
        .entries
        .iter()
        .filter(|e| e.valuation == i && e.multiplicity == 1 && e.value.first_digit() == Some(1))
        .count()
}

/// Conditions 1–7 of the inductive family for `f = f_t`, with squarefreeness
/// replaced by "every reported root is certified simple".
pub fn check_conditions(f: &SparsePoly, report: &RootReport, t: u64, q: u64) -> Vec<ConditionCheck> {
    let p = q;
    let mut out = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        out.push(ConditionCheck { name: name.into(), passed, detail });
    };
    push("1: coefficients in Z_p", f.is_p_integral(p), format!("min valuation {:?}", f.min_coeff_valuation(p)));
    let monic = f.leading_coeff().is_some_and(|c| c.is_one());
    let c0 = !f.coeff(0).is_zero();
    push("2: monic with nonzero constant term", monic && c0, format!("monic {monic}, constant {c0}"));
    let n = f.terms().len() as u64;
    push("3: t+1 terms", n == t + 1, format!("{n} terms"));
    let div = f.exponents().iter().all(|e| e % (q - 1) == 0);
    push("4: exponents divisible by q-1", div, format!("{:?}", f.exponents()));
    let top = first_digit_one(report, t as i64 - 1);
    push("5: simple root in p^(t-1)(1+pZ_p)", top >= 1, format!("{top} found"));
    let mut ok6 = true;
    let mut found = Vec::new();
    for i in 0..t.saturating_sub(1) {
        let k = first_digit_one(report, i as i64);
        found.push(k);
        ok6 &= k >= 2;
    }
    push("6: two simple roots in each p^i(1+pZ_p), i < t-1", ok6, format!("{found:?}"));
    let simple = report.is_certified() && report.entries.iter().all(|e| e.multiplicity == 1);
    push(
        "7: all roots certified simple (operational squarefreeness)",
        simple,
        format!("{} entries, {} unresolved", report.entries.len(), report.unresolved.len()),
    );
    out
}

/// Slopes of the Newton polygon, as strings.
fn slopes(f: &SparsePoly, p: u64) -> Vec<String> {
    newton_polygon(f, p).segments.iter().map(|s| s.slope.to_string()).collect()
}

/// Whether the Newton polygon has exactly the slopes `0, −1, …, −(t−1)`.
pub fn has_expected_slopes(f: &SparsePoly, p: u64, t: u64) -> bool {
    let mut got: Vec<i64> = newton_polygon(f, p)
        .segments
        .iter()
        .map(|s| if s.slope.is_integer() { s.slope.to_integer() } else { i64::MIN })
        .collect();
    got.sort_unstable();
    let want: Vec<i64> = (0..t as i64).map(|i| -i).rev().collect();
    got == want
}

/// Valuation of `f'(r)` for an integral root `r` known to working precision.
fn deriv_valuation(f: &SparsePoly, r: &PadicNum, prec: u32) -> Result<i64> {
    let n = prec;
    let m = pow_big(r.prime(), u64::from(n));
    let rep = r.integral_rep(n)?;
    let d = f
        .derivative()
        .eval_mod(&rep, &m)
        .ok_or_else(|| Error::PreconditionFailed("coefficients not p-integral".into()))?;
    if d.is_zero() {
        return Err(Error::PrecisionExhausted("derivative vanishes at the working precision".into()));
    }
    Ok(split_p(&d, r.prime()).0 as i64)
}

/// `γ = max v(f'(r))` and `γ' = 1 + max v(r − r')` over the certified roots.
fn gammas(f: &SparsePoly, report: &RootReport, prec: u32) -> Result<(i64, i64)> {
    if !report.is_certified() {
        return Err(Error::PreconditionFailed(
            "previous polynomial has unresolved clusters; thresholds cannot be bounded".into(),
        ));
    }
    let mut gamma = 0;
    for e in &report.entries {
        gamma = gamma.max(deriv_valuation(f, &e.value, prec)?);
    }
    let mut sep = 0;
    for (i, a) in report.entries.iter().enumerate() {
        for b in &report.entries[i + 1..] {
            match a.value.sub(&b.value).valuation() {
                Valuation::Finite(v) => sep = sep.max(v),
                _ => return Err(Error::PrecisionExhausted("two roots agree to working precision".into())),
            }
        }
    }
    Ok((gamma, 1 + sep))
}

fn thresholds(alpha_t: i64, gamma: i64, gamma_p: i64) -> Thresholds {
    let hensel = 2 * (gamma + alpha_t);
    let separation = hensel.max(2 * gamma_p);
    let combined = 2 * (alpha_t + gamma + gamma_p) + 1;
    let named = [
        ("alpha >= 2(gamma + alpha_t)", hensel),
        ("alpha >= max(2(gamma + alpha_t), 2 gamma')", separation),
        ("alpha > 2(alpha_t + gamma + gamma')", combined),
    ];
    let binding = named.iter().max_by_key(|(_, v)| *v).unwrap().0.to_string();
    Thresholds { hensel, separation, combined, binding }
}

/// Roots with first digit 1 required at index `t`: one at valuation `t−1`,
/// two at each smaller valuation.
fn distribution_ok(report: &RootReport, t: u64) -> bool {
    first_digit_one(report, t as i64 - 1) >= 1 && (0..t.saturating_sub(1)).all(|i| first_digit_one(report, i as i64) >= 2)
}

struct AlphaHit {
    r0: u64,
    alpha: u64,
    g: SparsePoly,
    report: RootReport,
}

fn try_alpha(hat: &SparsePoly, r0: Option<u64>, alpha: u64, t_new: u64, q: u64, opts: &ExtremalOptions) -> std::result::Result<AlphaHit, String> {
    let p = q;
    let g = SparsePoly::from_ints(&[(alpha, 1)]).sub(hat);
    let tag = match r0 {
        Some(r) => format!("r0={r} alpha={alpha}"),
        None => format!("scan alpha={alpha}"),
    };
    // The approximate-root test at r0 is sufficient but far from necessary:
    // a root near r0 appears long before v(g(r0)) > 2 v(g'(r0)). Its verdict
    // is kept for the log and the root counter decides.
    let lemma = r0.map(|r| {
        let terms = primitive_int_terms(&g, p);
        match lift_int(&terms, p, &BigInt::from(r), i64::from(opts.prec), opts.prec, false) {
            Ok(_) => "approximate-root test passed".to_string(),
            Err(e) => format!("approximate-root test failed ({e})"),
        }
    });
    let tag = match &lemma {
        Some(l) => format!("{tag} [{l}]"),
        None => tag,
    };
    let report = count_roots(&g, p, &opts.count_options()).map_err(|e| format!("{tag}: {e}"))?;
    if !report.is_certified() {
        return Err(format!("{tag}: {} unresolved clusters", report.unresolved.len()));
    }
    if !distribution_ok(&report, t_new) {
        return Err(format!("{tag}: root distribution incomplete"));
    }
    // the extra root: a unit root with first digit 1 other than 1 itself
    let r0 = match r0 {
        Some(r) => r,
        None => {
            let p2 = pow_big(p, 2);
            report
                .entries
                .iter()
                .filter(|e| e.valuation == 0 && e.value.first_digit() == Some(1))
                .filter_map(|e| e.value.integral_rep(2).ok())
                .map(|r| crate::arith::modp(&r, &p2))
                .find(|r| !r.is_one())
                .and_then(|r| r.to_u64())
                .unwrap_or(1)
        }
    };
    Ok(AlphaHit { r0, alpha, g, report })
}

/// First success in `cands`, tried in order with one parallel block per
/// round; failures are appended to `trace`.
fn search(
    cands: &[(Option<u64>, u64)],
    hat: &SparsePoly,
    t_new: u64,
    q: u64,
    opts: &ExtremalOptions,
    trace: &mut Vec<String>,
) -> Option<AlphaHit> {
    let chunk = rayon::current_num_threads().max(1);
    for block in cands.chunks(chunk) {
        let results: Vec<_> = block.par_iter().map(|&(r0, al)| try_alpha(hat, r0, al, t_new, q, opts)).collect();
        for r in results {
            match r {
                Ok(h) => return Some(h),
                Err(msg) => trace.push(msg),
            }
        }
    }
    None
}

/// One inductive step: from `f_t` (index `t`) to `f_{t+1}`.
fn step(f: &SparsePoly, report: &RootReport, t: u64, q: u64, opts: &ExtremalOptions) -> Result<(SparsePoly, RootReport, StepLog)> {
    let p = q;
    let t_new = t + 1;
    let alpha_t = f.degree().unwrap_or(0) as i64;
    let (gamma, gamma_p) = gammas(f, report, opts.prec)?;
    let th = thresholds(alpha_t, gamma, gamma_p);
    let floor = BigInt::from(th.floor());
    let hat = hat_f(f, p)?;
    let k = opts.prec;
    let modk = pow_big(p, u64::from(k));

    let mut trace = Vec::new();
    // Direct scan of the smallest admissible exponents. Small exponents keep
    // the non-monomial part of the next hat polynomial close, which keeps the
    // exponents of later steps within reach.
    let stride = (q - 1) * p;
    let mut start = (floor.to_u64().unwrap_or(0) / (q - 1) + 1) * (q - 1);
    while (start as i64 - alpha_t).rem_euclid(p as i64) != 0 {
        start += q - 1;
    }
    let scan: Vec<(Option<u64>, u64)> = (0..opts.alpha_window as u64)
        .map(|k| start + k * stride)
        .filter(|&a| a <= opts.alpha_cap)
        .map(|a| (None, a))
        .collect();
    let mut hit = search(&scan, &hat, t_new, q, opts, &mut trace);

    // Exponents α_t + k (q − 1) p^j. The hat polynomial agrees with x^α_t
    // up to p^gap, so an extra unit root r ≢ 1 mod p^2 needs
    // r^(α − α_t) ≡ 1 to high order, which these exponents provide.
    let mut ladder: Vec<(Option<u64>, u64)> = Vec::new();
    if hit.is_none() {
        let mut step_j = (q - 1) * p;
        'outer: while step_j <= opts.alpha_cap {
            for kk in 1..p {
                let Some(a) = step_j.checked_mul(kk).and_then(|d| d.checked_add(alpha_t as u64)) else {
                    break 'outer;
                };
                if a > opts.alpha_cap || ladder.len() >= opts.alpha_window {
                    break 'outer;
                }
                if BigInt::from(a) > floor {
                    ladder.push((None, a));
                }
            }
            let Some(next) = step_j.checked_mul(p) else { break };
            step_j = next;
        }
        hit = search(&ladder, &hat, t_new, q, opts, &mut trace);
    }

    if hit.is_none() {
        // Exponents from the p-adic exponent sequence at r0 = 1 + ap.
        let mut i_max = 1u32;
        while pow_big(p, u64::from(i_max)) <= BigInt::from(opts.alpha_cap) && i_max + 1 < k {
            i_max += 1;
        }
        let mut cands: Vec<(Option<u64>, u64)> = Vec::new();
        for a in 1..p {
            let r0 = 1 + a * p;
            let y = hat
                .eval_mod(&BigInt::from(r0), &modk)
                .ok_or_else(|| Error::Internal("hat polynomial not p-integral".into()))?;
            let r = PadicNum::from_residue(&BigInt::from(r0), p, k);
            let y = PadicNum::from_residue(&y, p, k);
            let seq = exponent_sequence(&r, &y, p, i_max, q - 1, &floor)?;
            let mut n = 0;
            for (i, al) in seq.iter().enumerate().skip(1) {
                let Some(al) = al.to_u64().filter(|&x| x <= opts.alpha_cap) else {
                    break;
                };
                if (al as i64 - alpha_t).rem_euclid(p as i64) != 0 {
                    trace.push(format!("r0={r0} i={} alpha={al}: fails alpha = alpha_t mod p", i + 1));
                    continue;
                }
                if cands.last() != Some(&(Some(r0), al)) {
                    cands.push((Some(r0), al));
                    n += 1;
                }
                if n >= opts.alpha_window {
                    break;
                }
            }
        }
        cands.sort_unstable();
        cands.dedup();
        hit = search(&cands, &hat, t_new, q, opts, &mut trace);
        if hit.is_none() {
            return Err(Error::SearchExhausted {
                summary: format!(
                    "no exponent found for t = {t_new}, q = {q} among {} scanned, {} ladder and {} sequence candidates",
                    scan.len(),
                    ladder.len(),
                    cands.len()
                ),
                trace,
            });
        }
    }
    let hit = hit.expect("checked above");

    // perturbation ε = p^E u with E > max(C, v(g(0)))
    let mut dmax = 0;
    for e in &hit.report.entries {
        dmax = dmax.max(deriv_valuation(&hit.g, &e.value, opts.prec)?);
    }
    let c = 2 * (t_new as i64).max(dmax);
    let v0 = crate::arith::val_rat(&hit.g.coeff(0), p);
    let e_pow = c.max(v0) + 1;
    let mut eps_trace = Vec::new();
    let target = (2 * t_new - 1) * (q - 1);
    for u in (1..).filter(|u| u % p != 0).take(opts.eps_window as usize) {
        let eps = BigRational::from_integer(pow_big(p, e_pow as u64) * u);
        let ft = hit.g.add(&SparsePoly::new(vec![(0, eps.clone())])?);
        let rep = match count_roots(&ft, p, &opts.count_options()) {
            Ok(r) => r,
            Err(e) => {
                eps_trace.push(format!("u={u}: {e}"));
                continue;
            }
        };
        let conds = check_conditions(&ft, &rep, t_new, q);
        let slopes_ok = has_expected_slopes(&ft, p, t_new);
        let enough = rep.totals.count_with_multiplicity >= target;
        if conds.iter().all(|c| c.passed) && slopes_ok && enough {
            let log = StepLog {
                t: t_new,
                gamma,
                gamma_prime: gamma_p,
                thresholds: th,
                r0: hit.r0,
                alpha: hit.alpha,
                c,
                epsilon: eps.to_string(),
                conditions: conds,
                newton_slopes: slopes(&ft, p),
                alpha_trace: trace,
                eps_trace,
            };
            return Ok((ft, rep, log));
        }
        let failed: Vec<_> = conds.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        eps_trace.push(format!(
            "u={u}: {} roots, slopes ok {slopes_ok}, failed {failed:?}",
            rep.totals.count_with_multiplicity
        ));
    }
    trace.extend(eps_trace);
    Err(Error::SearchExhausted {
        summary: format!("no perturbation found for t = {t_new}, q = {q} (alpha = {})", hit.alpha),
        trace,
    })
}

/// Builds `f_t` with at least `(2t − 1)(q − 1)` certified simple roots.
pub fn build_ft(t: u64, q: u64, opts: &ExtremalOptions) -> Result<ExtremalBuildReport> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be at least 1".into()));
    }
    let mut f = build_f1(q)?;
    let mut report = count_roots(&f, q, &opts.count_options())?;
    let mut log = Vec::new();
    for s in 1..t {
        let (g, r, l) = step(&f, &report, s, q, opts)?;
        f = g;
        report = r;
        log.push(l);
    }
    Ok(ExtremalBuildReport { t, q, poly: f, target_count: (2 * t - 1) * (q - 1), report, construction_log: log })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleVerification {
    pub report: RootReport,
    pub val_f_q: Valuation,
    pub val_fprime_q: i64,
    pub checks: Vec<ConditionCheck>,
}

impl ExampleVerification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Counts the roots of the trinomial example and checks the structure of the
/// argument: a double root at every Teichmüller point and `q − 1` simple
/// roots of valuation 1 lifted from the approximate root `q`.
pub fn verify_example(q: u64, opts: &ExtremalOptions) -> Result<ExampleVerification> {
    let f = trinomial_example(q, opts.exponent_cap)?;
    let report = count_roots(&f, q, &opts.count_options())?;
    let r0 = PadicNum::from_int(&BigInt::from(q), q, opts.prec)?;
    let (_, cert) = hensel_lift(&f, &r0, opts.prec)?;
    let mut checks = Vec::new();
    let doubles = report
        .entries
        .iter()
        .filter(|e| e.certificate == Certificate::ExactTorsion && e.multiplicity == 2)
        .count() as u64;
    checks.push(ConditionCheck {
        name: "double root at each Teichmüller point".into(),
        passed: doubles == q - 1,
        detail: format!("{doubles} double torsion roots"),
    });
    let v1 = report
        .entries
        .iter()
        .filter(|e| e.valuation == 1 && e.certificate == Certificate::HenselSimple)
        .count() as u64;
    checks.push(ConditionCheck {
        name: "q-1 simple roots of valuation 1".into(),
        passed: v1 == q - 1,
        detail: format!("{v1} found"),
    });
    let want_f = 2 * (q as i64 - 1);
    let want_d = q as i64 - 2;
    checks.push(ConditionCheck {
        name: "v(f(q)) = 2(q-1), v(f'(q)) = q-2".into(),
        passed: cert.val_f_r0 == Valuation::Finite(want_f) && cert.val_fprime_r0 == want_d,
        detail: format!("v(f(q)) = {:?}, v(f'(q)) = {}", cert.val_f_r0, cert.val_fprime_r0),
    });
    let lower = report.totals.count_with_multiplicity >= 3 * (q - 1);
    checks.push(ConditionCheck {
        name: "at least 3(q-1) roots with multiplicity".into(),
        passed: lower,
        detail: format!("{}", report.totals.count_with_multiplicity),
    });
    Ok(ExampleVerification { report, val_f_q: cert.val_f_r0, val_fprime_q: cert.val_fprime_r0, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparsepoly::parse_poly;

    #[test]
    fn trinomials() {
        assert_eq!(trinomial_example(3, DEFAULT_EXPONENT_CAP).unwrap().to_string(), "x^20 - 10*x^2 + 9");
        assert_eq!(trinomial_example(5, DEFAULT_EXPONENT_CAP).unwrap().to_string(), "x^2504 - 626*x^4 + 625");
        assert_eq!(trinomial_example(7, DEFAULT_EXPONENT_CAP).unwrap().degree(), Some(705_900));
        assert!(matches!(trinomial_example(11, DEFAULT_EXPONENT_CAP), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn f1_family() {
        assert_eq!(build_f1(3).unwrap().to_string(), "x^2 - 1");
        assert_eq!(build_f1(7).unwrap().to_string(), "x^6 - 1");
    }

    #[test]
    fn hat_examples() {
        let r = |s: &str| parse_poly(s).unwrap();
        assert_eq!(hat_f(&r("x^4 - 1"), 5).unwrap(), r("-1/624*x^4 + 625/624"));
        assert_eq!(hat_f(&r("x^2 - 1"), 3).unwrap(), r("-1/8*x^2 + 9/8"));
        assert_eq!(hat_f(&r("x^2 - 1"), 5).unwrap(), r("-1/24*x^2 + 25/24"));
    }

    #[test]
    fn hat_matches_definition() {
        // f(x/p)/f(1/p) evaluated directly at a few rationals
        let f = parse_poly("x^6 - 4*x^2 + 3").unwrap();
        let h = hat_f(&f, 3).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        let denom = f.eval_rational(&third);
        for n in [-2i64, 1, 5] {
            let x = BigRational::from_integer(n.into());
            assert_eq!(h.eval_rational(&x), f.eval_rational(&(&x * &third)) / &denom);
        }
    }

    #[test]
    fn example_skeleton_q3() {
        let v = verify_example(3, &ExtremalOptions::default()).unwrap();
        assert!(v.passed(), "{:?}", v.checks);
        assert_eq!(v.val_f_q, Valuation::Finite(4));
        assert_eq!(v.val_fprime_q, 1);
    }

    #[test]
    fn threshold_binding() {
        let th = thresholds(2, 0, 1);
        assert_eq!(th.combined, 7);
        assert_eq!(th.binding, "alpha > 2(alpha_t + gamma + gamma')");
    }
}
