//! Capped relative-precision arithmetic in Q_p, Newton lifting, Teichmüller
//! points and discrete-log style exponent sequences.

use crate::arith::{inv_mod, modp, phi_prime_power, pow_big, pow_mod, solve_linear_congruence, split_p};
use crate::error::{Error, Result};
use crate::sparsepoly::SparsePoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Valuation of a p-adic quantity known to finite precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    /// Indistinguishable from zero; the true valuation is at least this.
    AtLeast(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Lower bound usable in comparisons; `None` means `+∞`.
    pub fn lower(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PadicKind {
    Zero,
    Bottom { floor: i64 },
    Unit { valuation: i64, unit: BigInt, prec: u32 },
}

/// `p^v · u` with `u` known modulo `p^k`, or an exact zero, or a value only
/// known to lie in `p^N Z_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicNum {
    p: u64,
    kind: PadicKind,
}

impl PadicNum {
    pub fn zero(p: u64) -> Self {
        PadicNum { p, kind: PadicKind::Zero }
    }

    pub fn bottom(p: u64, floor: i64) -> Self {
        PadicNum { p, kind: PadicKind::Bottom { floor } }
    }

    /// `p^valuation · unit` with the unit reduced mod `p^prec`.
    pub fn from_parts(p: u64, valuation: i64, unit: &BigInt, prec: u32) -> Result<Self> {
        if prec == 0 {
            return Err(Error::InvalidInput("relative precision must be at least 1".into()));
        }
        let m = pow_big(p, prec as u64);
        let u = modp(unit, &m);
        if (&u % p).is_zero() {
            return Err(Error::InvalidInput("unit part divisible by p".into()));
        }
        Ok(PadicNum { p, kind: PadicKind::Unit { valuation, unit: u, prec } })
    }

    pub fn from_rational(num: i64, den: i64, p: u64, prec: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Self::from_big_rational(&BigRational::new(num.into(), den.into()), p, prec)
    }

    pub fn from_big_rational(q: &BigRational, p: u64, prec: u32) -> Result<Self> {
        if q.is_zero() {
            return Ok(Self::zero(p));
        }
        let (a, un) = split_p(q.numer(), p);
        let (b, ud) = split_p(q.denom(), p);
        let m = pow_big(p, prec as u64);
        let inv = inv_mod(&ud, &m).expect("coprime to p");
        Self::from_parts(p, a as i64 - b as i64, &(un * inv), prec)
    }

    pub fn from_int(n: &BigInt, p: u64, prec: u32) -> Result<Self> {
        Self::from_big_rational(&BigRational::from_integer(n.clone()), p, prec)
    }

    /// Element of `Z_p` known modulo `p^n` through the representative `r`.
    pub fn from_residue(r: &BigInt, p: u64, n: u32) -> Self {
        let m = pow_big(p, n as u64);
        let r = modp(r, &m);
        if r.is_zero() {
            return Self::bottom(p, n as i64);
        }
        let (v, u) = split_p(&r, p);
        Self::from_parts(p, v as i64, &u, n - v as u32).expect("unit")
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> &PadicKind {
        &self.kind
    }

    pub fn valuation(&self) -> Valuation {
        match &self.kind {
            PadicKind::Zero => Valuation::Infinite,
            PadicKind::Bottom { floor } => Valuation::AtLeast(*floor),
            PadicKind::Unit { valuation, .. } => Valuation::Finite(*valuation),
        }
    }

    pub fn unit(&self) -> Option<&BigInt> {
        match &self.kind {
            PadicKind::Unit { unit, .. } => Some(unit),
            _ => None,
        }
    }

    pub fn rel_precision(&self) -> Option<u32> {
        match &self.kind {
            PadicKind::Unit { prec, .. } => Some(*prec),
            _ => None,
        }
    }

    /// Absolute precision; `None` for the exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.kind {
            PadicKind::Zero => None,
            PadicKind::Bottom { floor } => Some(*floor),
            PadicKind::Unit { valuation, prec, .. } => Some(valuation + *prec as i64),
        }
    }

    /// Membership in `A = {v >= 0}`; `None` when precision cannot decide.
    pub fn is_integral(&self) -> Option<bool> {
        match self.valuation() {
            Valuation::Infinite => Some(true),
            Valuation::Finite(v) => Some(v >= 0),
            Valuation::AtLeast(n) => (n >= 0).then_some(true),
        }
    }

    /// Membership in `M = {v > 0}`; `None` when precision cannot decide.
    pub fn in_maximal_ideal(&self) -> Option<bool> {
        match self.valuation() {
            Valuation::Infinite => Some(true),
            Valuation::Finite(v) => Some(v > 0),
            Valuation::AtLeast(n) => (n > 0).then_some(true),
        }
    }

    /// Residue of the unit part modulo `p`.
    pub fn first_digit(&self) -> Option<u64> {
        self.unit().map(|u| {
            let r: BigInt = u % self.p;
            u64::try_from(r).expect("small")
        })
    }

    /// Integer representative modulo `p^n` of an element of `Z_p`.
    pub fn integral_rep(&self, n: u32) -> Result<BigInt> {
        let m = pow_big(self.p, n as u64);
        match &self.kind {
            PadicKind::Zero => Ok(BigInt::zero()),
            PadicKind::Bottom { floor } => {
                if *floor >= n as i64 {
                    Ok(BigInt::zero())
                } else {
                    Err(Error::PrecisionExhausted(format!("value known only modulo p^{floor}, need p^{n}")))
                }
            }
            PadicKind::Unit { valuation, unit, prec } => {
                if *valuation < 0 {
                    return Err(Error::PreconditionFailed("value is not p-integral".into()));
                }
                if *valuation >= n as i64 {
                    return Ok(BigInt::zero());
                }
                let abs = valuation + i64::from(*prec);
                if abs < i64::from(n) {
                    return Err(Error::PrecisionExhausted(format!(
                        "absolute precision {abs} below requested {n}"
                    )));
                }
                Ok(modp(&(unit * pow_big(self.p, *valuation as u64)), &m))
            }
        }
    }

    /// Drops relative precision to at most `k`.
    pub fn truncate(&self, k: u32) -> Self {
        match &self.kind {
            PadicKind::Unit { valuation, unit, prec } if *prec > k && k > 0 => {
                Self::from_parts(self.p, *valuation, unit, k).expect("unit")
            }
            _ => self.clone(),
        }
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed primes in p-adic arithmetic");
    }

    pub fn neg(&self) -> Self {
        match &self.kind {
            PadicKind::Unit { valuation, unit, prec } => {
                Self::from_parts(self.p, *valuation, &-unit, *prec).expect("unit")
            }
            _ => self.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_prime(other);
        let p = self.p;
        let abs = match (self.abs_precision(), other.abs_precision()) {
            (None, None) => return Self::zero(p),
            (None, _) => return other.clone(),
            (_, None) => return self.clone(),
            (Some(a), Some(b)) => a.min(b),
        };
        let (va, ua) = self.rep_pair();
        let (vb, ub) = other.rep_pair();
        let vmin = va.min(vb);
        if vmin >= abs {
            return Self::bottom(p, abs);
        }
        let s = ua * pow_big(p, (va - vmin) as u64) + ub * pow_big(p, (vb - vmin) as u64);
        Self::from_scaled(p, vmin, &s, abs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_prime(other);
        let p = self.p;
        match (&self.kind, &other.kind) {
            (PadicKind::Zero, _) | (_, PadicKind::Zero) => Self::zero(p),
            (PadicKind::Bottom { floor: a }, PadicKind::Bottom { floor: b }) => Self::bottom(p, a + b),
            (PadicKind::Bottom { floor }, PadicKind::Unit { valuation, .. })
            | (PadicKind::Unit { valuation, .. }, PadicKind::Bottom { floor }) => {
                Self::bottom(p, floor + valuation)
            }
            (
                PadicKind::Unit { valuation: va, unit: ua, prec: ka },
                PadicKind::Unit { valuation: vb, unit: ub, prec: kb },
            ) => Self::from_parts(p, va + vb, &(ua * ub), (*ka).min(*kb)).expect("unit"),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_prime(other);
        let p = self.p;
        let (vb, ub, kb) = match &other.kind {
            PadicKind::Unit { valuation, unit, prec } => (*valuation, unit, *prec),
            _ => return Err(Error::DivisionByZero),
        };
        Ok(match &self.kind {
            PadicKind::Zero => Self::zero(p),
            PadicKind::Bottom { floor } => Self::bottom(p, floor - vb),
            PadicKind::Unit { valuation, unit, prec } => {
                let k = (*prec).min(kb);
                let m = pow_big(p, k as u64);
                let inv = inv_mod(ub, &m).expect("unit");
                Self::from_parts(p, valuation - vb, &(unit * inv), k)?
            }
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return match &self.kind {
                PadicKind::Unit { prec, .. } => Self::from_parts(self.p, 0, &BigInt::one(), *prec).expect("unit"),
                _ => Self::from_parts(self.p, 0, &BigInt::one(), 1).expect("unit"),
            };
        }
        match &self.kind {
            PadicKind::Zero => Self::zero(self.p),
            PadicKind::Bottom { floor } => Self::bottom(self.p, floor * e as i64),
            PadicKind::Unit { valuation, unit, prec } => {
                let m = pow_big(self.p, *prec as u64);
                Self::from_parts(self.p, valuation * e as i64, &pow_mod(unit, e, &m), *prec).expect("unit")
            }
        }
    }

    /// Equality up to the lower of the two absolute precisions.
    pub fn approx_eq(&self, other: &Self) -> bool {
        match self.sub(other).kind {
            PadicKind::Zero | PadicKind::Bottom { .. } => true,
            PadicKind::Unit { .. } => false,
        }
    }

    fn rep_pair(&self) -> (i64, BigInt) {
        match &self.kind {
            PadicKind::Unit { valuation, unit, .. } => (*valuation, unit.clone()),
            PadicKind::Bottom { floor } => (*floor, BigInt::zero()),
            PadicKind::Zero => unreachable!("exact zero handled by caller"),
        }
    }

    /// Value `p^v · s` known to absolute precision `abs`.
    fn from_scaled(p: u64, v: i64, s: &BigInt, abs: i64) -> Self {
        let k = (abs - v) as u64;
        let s = modp(s, &pow_big(p, k));
        if s.is_zero() {
            return Self::bottom(p, abs);
        }
        let (w, u) = split_p(&s, p);
        Self::from_parts(p, v + w as i64, &u, (k - w) as u32).expect("unit")
    }

    /// Canonical ordering key: valuation, then base-p digits of the unit from
    /// the lowest digit up.
    pub fn digit_key(&self) -> (i64, Vec<u64>) {
        match &self.kind {
            PadicKind::Zero => (i64::MAX, Vec::new()),
            PadicKind::Bottom { floor } => (*floor, Vec::new()),
            PadicKind::Unit { valuation, unit, prec } => {
                let mut digits = Vec::with_capacity(*prec as usize);
                let mut u = unit.clone();
                let pb = BigInt::from(self.p);
                for _ in 0..*prec {
                    let d: BigInt = &u % &pb;
                    digits.push(u64::try_from(d).expect("small"));
                    u /= &pb;
                }
                (*valuation, digits)
            }
        }
    }

    pub fn cmp_key(&self, other: &Self) -> Ordering {
        self.digit_key().cmp(&other.digit_key())
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PadicKind::Zero => write!(f, "0"),
            PadicKind::Bottom { floor } => write!(f, "O({}^{})", self.p, floor),
            PadicKind::Unit { valuation, unit, prec } => {
                if *valuation == 0 {
                    write!(f, "{unit} + O({}^{prec})", self.p)
                } else {
                    write!(f, "{}^{valuation}*{unit} + O({}^{})", self.p, self.p, valuation + *prec as i64)
                }
            }
        }
    }
}

/// Approximate-root data for a Newton lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxRootCertificate {
    pub r0: PadicNum,
    pub val_f_r0: Valuation,
    pub val_fprime_r0: i64,
}

/// Result of a Newton lift on an integer polynomial modulo powers of `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntLift {
    pub root: BigInt,
    pub val_f: Valuation,
    pub val_fprime: i64,
    pub exact: bool,
}

/// Valuation of `x` when it is known modulo `p^cap`.
pub(crate) fn val_mod(x: &BigInt, p: u64, cap: i64) -> Valuation {
    if x.is_zero() {
        return Valuation::AtLeast(cap);
    }
    let (v, _) = split_p(x, p);
    if v as i64 >= cap {
        Valuation::AtLeast(cap)
    } else {
        Valuation::Finite(v as i64)
    }
}

fn eval_terms(terms: &[(u64, BigInt)], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for (e, c) in terms {
        acc += c * pow_mod(x, *e, m);
    }
    modp(&acc, m)
}

fn deriv_terms(terms: &[(u64, BigInt)]) -> Vec<(u64, BigInt)> {
    terms
        .iter()
        .filter(|(e, _)| *e > 0)
        .map(|(e, c)| (e - 1, c * BigInt::from(*e)))
        .collect()
}

/// Newton lifting for `g ∈ Z_p[x]` presented exactly by integer terms, from a
/// starting point known modulo `p^known`.
///
/// `exact_check` controls whether an exact integer evaluation at the starting
/// representative is attempted (to detect exact roots).
pub(crate) fn lift_int(
    terms: &[(u64, BigInt)],
    p: u64,
    r0: &BigInt,
    known: i64,
    target: u32,
    exact_check: bool,
) -> Result<IntLift> {
    let dterms = deriv_terms(terms);
    let cap = known.max(1);
    let mcap = pow_big(p, cap as u64);
    let fd = val_mod(&eval_terms(&dterms, r0, &mcap), p, cap);
    let delta = match fd {
        Valuation::Finite(d) => d,
        _ => {
            return Err(Error::PrecisionExhausted(format!(
                "derivative valuation not determined below p^{cap}"
            )))
        }
    };
    let fv = val_mod(&eval_terms(terms, r0, &mcap), p, cap);
    let exact = exact_check && is_exact_root(terms, r0);
    let val_f = if exact { Valuation::Infinite } else { fv };
    match val_f {
        Valuation::Finite(a) if a <= 2 * delta => {
            return Err(Error::PreconditionFailed(format!(
                "v(f(r0)) = {a} is not greater than 2 v(f'(r0)) = {}",
                2 * delta
            )))
        }
        Valuation::AtLeast(a) if a <= 2 * delta => {
            return Err(Error::PrecisionExhausted(format!(
                "v(f(r0)) >= {a} does not decide against 2 v(f'(r0)) = {}",
                2 * delta
            )))
        }
        _ => {}
    }
    let target_m = pow_big(p, target as u64);
    if exact {
        return Ok(IntLift { root: modp(r0, &target_m), val_f, val_fprime: delta, exact: true });
    }
    let w = target as i64 + 2 * delta + 2;
    let m = pow_big(p, w as u64);
    let pd = pow_big(p, delta as u64);
    let stop = target as i64 + delta;
    let mut r = modp(r0, &m);
    for _ in 0..256 {
        let g = eval_terms(terms, &r, &m);
        if val_mod(&g, p, w).lower().map_or(true, |v| v >= stop) {
            return Ok(IntLift { root: modp(&r, &target_m), val_f, val_fprime: delta, exact: false });
        }
        let d = eval_terms(&dterms, &r, &m);
        if val_mod(&d, p, w) != Valuation::Finite(delta) {
            return Err(Error::Internal("derivative valuation drifted during Newton iteration".into()));
        }
        let du = &d / &pd;
        let inv = inv_mod(&du, &m).expect("unit");
        r = modp(&(r - (g / &pd) * inv), &m);
    }
    Err(Error::Internal("Newton iteration failed to converge".into()))
}

fn is_exact_root(terms: &[(u64, BigInt)], r: &BigInt) -> bool {
    let deg = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
    let bits = r.bits().max(1);
    if deg.saturating_mul(bits) > 1 << 22 {
        return false;
    }
    let mut acc = BigInt::zero();
    for (e, c) in terms {
        acc += c * num_traits::pow(r.clone(), *e as usize);
    }
    acc.is_zero()
}

/// Exact integer model of the primitive part of `f`: the primitive part
/// times the lcm of its denominators (a unit).
pub(crate) fn primitive_int_terms(f: &SparsePoly, p: u64) -> Vec<(u64, BigInt)> {
    let g = f.primitive_part(p);
    let mut l = BigInt::one();
    for (_, c) in g.terms() {
        l = num_integer::Integer::lcm(&l, c.denom());
    }
    g.terms()
        .iter()
        .map(|(e, c)| (*e, (c * BigRational::from_integer(l.clone())).to_integer()))
        .collect()
}

/// Lifts an approximate root of `f` to a root modulo `p^target`.
///
/// The test `v(f(r0)) > 2 v(f'(r0))` is applied to the primitive part of `f`
/// (content removed), which is where the criterion is valid.
pub fn hensel_lift(f: &SparsePoly, r0: &PadicNum, target: u32) -> Result<(PadicNum, ApproxRootCertificate)> {
    let p = r0.prime();
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if r0.is_integral() != Some(true) {
        return Err(Error::PreconditionFailed("starting point must have valuation >= 0".into()));
    }
    let known = r0.abs_precision().unwrap_or(i64::from(target).max(1) + 64);
    let known32 = known.max(0) as u32;
    let rep = r0.integral_rep(known32)?;
    let terms = primitive_int_terms(f, p);
    let lift = lift_int(&terms, p, &rep, known, target, true)?;
    let root = if lift.exact {
        exact_root_padic(&rep, p, target)
    } else {
        PadicNum::from_residue(&lift.root, p, target)
    };
    let cert = ApproxRootCertificate { r0: r0.clone(), val_f_r0: lift.val_f, val_fprime_r0: lift.val_fprime };
    Ok((root, cert))
}

fn exact_root_padic(r: &BigInt, p: u64, target: u32) -> PadicNum {
    if r.is_zero() {
        return PadicNum::zero(p);
    }
    let (v, _) = split_p(r, p);
    let prec = (target as i64 - v as i64).max(1) as u32;
    PadicNum::from_int(r, p, prec).expect("nonzero")
}

/// The `(p−1)`-th root of unity congruent to `residue` modulo `p`.
pub fn teichmuller(p: u64, residue: u64, prec: u32) -> PadicNum {
    assert!(residue >= 1 && residue < p, "residue must lie in [1, p-1]");
    let prec = prec.max(1);
    let terms = vec![(0u64, BigInt::from(-1)), (p - 1, BigInt::one())];
    let lift = lift_int(&terms, p, &BigInt::from(residue), 1, prec, false)
        .expect("x^(p-1) - 1 is separable modulo p");
    PadicNum::from_residue(&lift.root, p, prec)
}

/// All `p`-th roots of unity in `Q_p`, found by residue analysis of `x^p − 1`.
pub fn pth_roots_of_unity(p: u64, prec: u32) -> Vec<PadicNum> {
    let f = SparsePoly::from_ints(&[(0, -1), (p, 1)]);
    let m = BigInt::from(p);
    let mut roots = Vec::new();
    for a in 1..p {
        let a_big = BigInt::from(a);
        if !f.eval_mod(&a_big, &m).expect("integral").is_zero() {
            continue;
        }
        // Expand f(a + p y), remove content, and look for residue roots of
        // the normalized shift; each simple one lifts to exactly one root.
        let n = prec.max(p as u32 + 2);
        let start = PadicNum::from_residue(&a_big, p, n);
        let h = f.taylor_shift_truncate(&start, p, n).expect("integral");
        let h_terms: Vec<(u64, BigInt)> = h
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c.clone()))
            .collect();
        let vmin = h_terms.iter().map(|(_, c)| split_p(c, p).0).min().unwrap_or(0);
        let pv = pow_big(p, vmin);
        let norm: Vec<(u64, BigInt)> = h_terms.iter().map(|(e, c)| (*e, c / &pv)).collect();
        for y in 0..p {
            let yb = BigInt::from(y);
            if !eval_terms(&norm, &yb, &m).is_zero() {
                continue;
            }
            let d = eval_terms(&deriv_terms(&norm), &yb, &m);
            assert!(!d.is_zero(), "multiple residue root in the p-th roots of unity analysis");
            let lifted = lift_int(&norm, p, &yb, 1, prec, true).expect("simple residue root");
            let x = &a_big + BigInt::from(p) * lifted.root;
            roots.push(PadicNum::from_residue(&x, p, prec));
        }
    }
    roots
}

/// Exponents `α^(1..=i_max)` with `r^{α^(i)} ≡ y (mod p^i)`, each the least
/// admissible value `>= floor` that is divisible by `divisor`.
pub fn exponent_sequence(
    r: &PadicNum,
    y: &PadicNum,
    p: u64,
    i_max: u32,
    divisor: u64,
    floor: &BigInt,
) -> Result<Vec<BigInt>> {
    if i_max == 0 {
        return Ok(Vec::new());
    }
    let need = i_max.max(2);
    let rr = r.integral_rep(need)?;
    let yy = y.integral_rep(i_max)?;
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    if !modp(&(&rr - 1), &pb).is_zero() || !modp(&(&yy - 1), &pb).is_zero() {
        return Err(Error::PreconditionFailed("r and y must be congruent to 1 modulo p".into()));
    }
    if modp(&(&rr - 1), &p2).is_zero() {
        return Err(Error::PreconditionFailed("r must not be congruent to 1 modulo p^2".into()));
    }
    let div = BigInt::from(divisor);
    let mut out = Vec::with_capacity(i_max as usize);
    let mut beta = BigInt::zero();
    for i in 1..=i_max {
        if i > 1 {
            let m = pow_big(p, i as u64);
            let step = phi_prime_power(p, i - 1);
            let target = modp(&yy, &m);
            let mut found = None;
            for k in 0..p {
                let cand = &beta + &step * k;
                if pow_mod(&rr, to_u64_exp(&cand)?, &m) == target {
                    found = Some(cand);
                    break;
                }
            }
            beta = found.ok_or_else(|| Error::Internal("lifting step found no digit".into()))?;
        }
        let period = phi_prime_power(p, i);
        let (k0, per) = solve_linear_congruence(&period, &-&beta, &div)
            .ok_or_else(|| Error::PreconditionFailed("no exponent in the class is divisible by the divisor".into()))?;
        let base = &beta + &period * k0;
        let l = &period * per;
        out.push(least_at_least(&base, &l, floor));
    }
    Ok(out)
}

fn to_u64_exp(x: &BigInt) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::CapExceeded("exponent does not fit in 64 bits".into()))
}

/// Least element `>= floor` of `base + l Z`.
fn least_at_least(base: &BigInt, l: &BigInt, floor: &BigInt) -> BigInt {
    floor + modp(&(base - floor), l)
}
