//! Certified counting of the roots of a sparse polynomial in `Q_p^*`.
//!
//! Roots are grouped by valuation (Newton polygon segments) and then by first
//! digit. Simple residue roots are Hensel-lifted; multiple residue roots are
//! first checked against exactly representable points (Teichmüller points and
//! rationals) and then refined on the Taylor shift until the depth budget runs
//! out. Anything left over is reported as an unresolved cluster with an upper
//! bound, never as a guessed multiplicity.

mod dense;
mod exact;

use crate::arith::{
    binomial_mod_p, is_prime, modp, mult_order, pow_big, pow_mod, pow_mod_u64, rat_mod, split_p,
};
use crate::bounds::{new_upper_bound, FieldParams};
use crate::error::{Error, Result};
use crate::padic::{lift_int, primitive_int_terms, teichmuller, PadicNum, Valuation};
use crate::sparsepoly::{newton_polygon, p_pow_rat, NewtonPolygon, Segment, SparsePoly};
use dense::{deflate, residue_multiplicity, shift_scaled, to_terms, trim};
use exact::ExactAnalysis;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOptions {
    /// Working precision `N` (powers of `p`).
    pub prec: u32,
    /// Refinement levels allowed below the first-digit split.
    pub max_depth: u32,
    /// Count roots of `g` and take `p`-th roots when `f(x) = g(x^p)`.
    pub substitute_pth_powers: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { prec: 40, max_depth: 8, substitute_pth_powers: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certificate {
    HenselSimple,
    ExactTorsion,
    ExactRational,
}

/// An exactly known root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExactPoint {
    Rational {
        #[serde(with = "rat_str")]
        value: BigRational,
    },
    /// The root of unity of order `order` with first digit `residue`.
    Teichmuller { residue: u64, order: u64 },
    /// The unique `index`-th root in `Q_p` of a rational number.
    Radical {
        #[serde(with = "rat_str")]
        radicand: BigRational,
        index: u64,
    },
}

/// Newton data for a Hensel-certified root, measured on the primitive
/// rescaled polynomial whose roots are units.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenselData {
    pub val_g: Valuation,
    pub val_gprime: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub value: PadicNum,
    pub valuation: i64,
    pub multiplicity: u32,
    pub certificate: Certificate,
    pub exact: Option<ExactPoint>,
    pub hensel: Option<HenselData>,
}

/// A residue disk `p^valuation (center + p^level Z_p)` whose roots were not
/// separated. `upper_bound` counts roots with multiplicity over the algebraic
/// closure, so it over-counts roots in `Q_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnresolvedCluster {
    pub valuation: i64,
    pub center: Option<PadicNum>,
    pub level: u32,
    pub upper_bound: u64,
    pub depth_reached: u32,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub count_distinct: u64,
    pub count_with_multiplicity: u64,
    pub upper_bound_with_multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub p: u64,
    pub options: CountOptions,
    pub polynomial: String,
    pub t: usize,
    pub newton_polygon: NewtonPolygon,
    pub entries: Vec<RootEntry>,
    pub unresolved: Vec<UnresolvedCluster>,
    pub totals: Totals,
    pub precision_exhausted: bool,
}

impl RootReport {
    pub fn is_certified(&self) -> bool {
        self.unresolved.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentCount {
    pub count: u64,
    pub roots: Vec<RootEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub name: String,
    pub bound: Option<u64>,
    pub observed: u64,
    pub applicable: bool,
    pub satisfied: Option<bool>,
}

pub(crate) mod rat_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

/// Exponents of `f` lying on `seg`.
fn points_on(f: &SparsePoly, p: u64, seg: &Segment) -> Vec<u64> {
    let (x0, y0) = seg.start;
    let (x1, y1) = seg.end;
    f.terms()
        .iter()
        .filter(|(e, _)| *e >= x0 && *e <= x1)
        .filter(|(e, c)| {
            let v = crate::arith::val_rat(c, p);
            (v - y0) as i128 * (x1 - x0) as i128 == (*e - x0) as i128 * (y1 - y0) as i128
        })
        .map(|(e, _)| *e)
        .collect()
}

/// Residues `r` with `r^Δ ≡ −a_s/a_e (mod p)` for a two-point segment with
/// `p ∤ Δ`, where `a_s, a_e` are the end coefficients after rescaling.
fn binomial_residues(f: &SparsePoly, gm: &SparsePoly, p: u64, seg: &Segment) -> Result<Vec<u64>> {
    let delta = seg.end.0 - seg.start.0;
    if delta % p == 0 {
        return Err(Error::NotApplicable(format!("p = {p} divides the segment width {delta}")));
    }
    if points_on(f, p, seg).len() != 2 {
        return Err(Error::NotApplicable("segment carries more than two support points".into()));
    }
    let pb = BigInt::from(p);
    let a_s = gm.coeff(seg.start.0);
    let a_e = gm.coeff(seg.end.0);
    let c = rat_mod(&(-a_s / a_e), &pb)
        .and_then(|c| c.to_u64())
        .ok_or_else(|| Error::Internal("segment end coefficients are not units".into()))?;
    let roots: Vec<u64> = (1..p).filter(|&r| pow_mod_u64(r, delta, p) == c).collect();
    let g = num_integer::gcd(p - 1, delta);
    let expected = if pow_mod_u64(c, (p - 1) / g, p) == 1 { g } else { 0 };
    if roots.len() as u64 != expected {
        return Err(Error::Internal("binomial residue count disagrees with the power-residue test".into()));
    }
    Ok(roots)
}

/// Multiplicity of `r` as a root of the reduction mod `p` of an integer
/// polynomial, via Hasse derivatives and Lucas' theorem. Only the orders `j`
/// digit-wise below some exponent can contribute, so those are the only ones
/// visited; the multiplicity itself can be as large as a power of `p`.
fn sparse_residue_multiplicity(terms: &[(u64, BigInt)], r: u64, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let reduced: Vec<(u64, u64)> = terms
        .iter()
        .map(|(e, c)| (*e, modp(c, &pb).to_u64().unwrap()))
        .filter(|(_, c)| *c != 0)
        .collect();
    let deg = reduced.iter().map(|(e, _)| *e).max().unwrap_or(0);
    let mut j = 0u64;
    loop {
        let Some(next) = reduced.iter().filter_map(|(e, _)| next_dominated(*e, j, p)).min() else {
            return deg + 1;
        };
        j = next;
        let mut s = 0u64;
        for (e, c) in &reduced {
            if *e < j {
                continue;
            }
            let b = binomial_mod_p(*e, j, p);
            if b == 0 {
                continue;
            }
            s = (s + c * b % p * pow_mod_u64(r, e - j, p)) % p;
        }
        if s != 0 {
            return j;
        }
        j += 1;
    }
}

/// Smallest `y ≥ x` whose base-`p` digits are all at most those of `e`.
fn next_dominated(e: u64, x: u64, p: u64) -> Option<u64> {
    let digits = |mut n: u64| {
        let mut d = Vec::new();
        while n > 0 {
            d.push(n % p);
            n /= p;
        }
        d
    };
    let de = digits(e);
    let mut x = x;
    loop {
        if x > e {
            return None;
        }
        let dx = digits(x);
        let Some(k) = (0..dx.len()).rev().find(|&k| dx[k] > de.get(k).copied().unwrap_or(0)) else {
            return Some(x);
        };
        let unit = u128::from(p).pow(k as u32 + 1);
        let bumped = (u128::from(x) / unit + 1) * unit;
        x = u64::try_from(bumped).ok()?;
    }
}

#[derive(Default)]
struct Parts {
    entries: Vec<RootEntry>,
    unresolved: Vec<UnresolvedCluster>,
    exhausted: bool,
}

/// Work on one valuation `m`: `gm(y) = g(p^m y) / p^c` has the roots of
/// valuation `m` as unit roots.
struct Layer<'a> {
    p: u64,
    m: i64,
    gm: SparsePoly,
    terms: Vec<(u64, BigInt)>,
    opts: &'a CountOptions,
}

impl<'a> Layer<'a> {
    fn new(g: &SparsePoly, p: u64, m: i64, opts: &'a CountOptions) -> Self {
        // Nothing below works modulo more than p^(3 prec + 2 depth + 8), so
        // terms beyond this cut cannot change any result.
        let cut = 4 * i64::from(opts.prec) + 2 * i64::from(opts.max_depth) + 16;
        let gm = g.scale_substitute_truncated(p, m, cut);
        let terms = primitive_int_terms(&gm, p);
        Layer { p, m, gm, terms, opts }
    }

    fn cluster(&self, center: &BigInt, level: u32, bound: u64, depth: u32, reason: String) -> UnresolvedCluster {
        UnresolvedCluster {
            valuation: self.m,
            center: PadicNum::from_parts(self.p, self.m, center, level).ok(),
            level,
            upper_bound: bound,
            depth_reached: depth,
            reason,
        }
    }

    /// Certifies a simple unit root of `gm` from `y0`, known modulo `p^known`.
    fn certify(&self, y0: &BigInt, known: i64, level: u32, depth: u32, out: &mut Parts) {
        match lift_int(&self.terms, self.p, y0, known, self.opts.prec, false) {
            Ok(l) => out.entries.push(RootEntry {
                value: PadicNum::from_parts(self.p, self.m, &l.root, self.opts.prec).expect("unit root"),
                valuation: self.m,
                multiplicity: 1,
                certificate: Certificate::HenselSimple,
                exact: None,
                hensel: Some(HenselData { val_g: l.val_f, val_gprime: l.val_fprime }),
            }),
            Err(e) => {
                out.exhausted |= matches!(e, Error::PrecisionExhausted(_));
                let c = modp(y0, &pow_big(self.p, u64::from(level)));
                out.unresolved.push(self.cluster(&c, level, 1, depth, e.to_string()));
            }
        }
    }

    fn general(&self, exact: &mut ExactAnalysis, out: &mut Parts) -> Result<()> {
        for r in 1..self.p {
            let mu = sparse_residue_multiplicity(&self.terms, r, self.p);
            match mu {
                0 => {}
                1 => self.certify(&BigInt::from(r), 1, 1, 0, out),
                _ => self.disk(r, mu, exact, out)?,
            }
        }
        Ok(())
    }

    /// Residue disk `r + p Z_p` of `gm` holding `mu` roots over the closure.
    fn disk(&self, r: u64, mu: u64, exact: &mut ExactAnalysis, out: &mut Parts) -> Result<()> {
        let p = self.p;
        let n = self.opts.prec;
        let wide = pow_big(p, u64::from(n) + 1);
        let mut points: Vec<(BigInt, u32)> = Vec::new();
        if self.m == 0 {
            let d = mult_order(r, p);
            let k = exact.torsion_multiplicity(d);
            if k > 0 {
                let y = teichmuller(p, r, n + 1).integral_rep(n + 1)?;
                out.entries.push(RootEntry {
                    value: PadicNum::from_parts(p, 0, &y, n)?,
                    valuation: 0,
                    multiplicity: k,
                    certificate: Certificate::ExactTorsion,
                    exact: Some(ExactPoint::Teichmuller { residue: r, order: d }),
                    hensel: None,
                });
                points.push((y, k));
            }
        }
        for (x, k) in exact.rational_in_disk(self.m, r) {
            let y = rat_mod(&(&x / p_pow_rat(p, self.m)), &wide).expect("unit");
            out.entries.push(RootEntry {
                value: PadicNum::from_parts(p, self.m, &y, n)?,
                valuation: self.m,
                multiplicity: k,
                certificate: Certificate::ExactRational,
                exact: Some(ExactPoint::Rational { value: x }),
                hensel: None,
            });
            points.push((y, k));
        }
        let found: u64 = points.iter().map(|(_, k)| u64::from(*k)).sum();
        if found > mu {
            return Err(Error::Internal(format!(
                "exact multiplicities {found} exceed the residue multiplicity {mu}"
            )));
        }
        if found == mu {
            return Ok(());
        }
        let rb = BigInt::from(r);
        let mut h = self.gm.taylor_shift_truncate(&PadicNum::from_residue(&rb, p, n), p, n)?;
        let modn = pow_big(p, u64::from(n));
        for (y, k) in &points {
            let zc = modp(&((y - &rb) / BigInt::from(p)), &modn);
            for _ in 0..*k {
                h = deflate(&h, &zc, &modn);
            }
        }
        self.classify(h, n, rb, 1, mu - found, self.opts.max_depth, out);
        Ok(())
    }

    /// Roots of `H(z)`, where `y = center + p^level z`, with `H` known modulo
    /// `p^prec`.
    #[allow(clippy::too_many_arguments)]
    fn classify(&self, h: Vec<BigInt>, prec: u32, center: BigInt, level: u32, mu: u64, depth: u32, out: &mut Parts) {
        let p = self.p;
        let depth_used = self.opts.max_depth - depth;
        let h = trim(h);
        if h.is_empty() {
            out.exhausted = true;
            out.unresolved.push(self.cluster(
                &center,
                level,
                mu,
                depth_used,
                "all coefficients vanish at the working precision".into(),
            ));
            return;
        }
        let v = h.iter().filter(|c| !c.is_zero()).map(|c| split_p(c, p).0).min().unwrap();
        let pv = pow_big(p, v);
        let hn: Vec<BigInt> = h.iter().map(|c| c / &pv).collect();
        let prec = prec - v as u32;
        let step = pow_big(p, u64::from(level));
        for y in 0..p {
            let k = residue_multiplicity(&hn, y, p) as u64;
            if k == 0 {
                continue;
            }
            let yb = BigInt::from(y);
            let c2 = &center + &step * &yb;
            if k == 1 {
                match lift_int(&to_terms(&hn), p, &yb, 1, prec, false) {
                    Ok(l) => {
                        let approx = &center + &step * l.root;
                        self.certify(&approx, i64::from(level + prec), level + 1, depth_used, out);
                    }
                    Err(e) => {
                        out.exhausted |= matches!(e, Error::PrecisionExhausted(_));
                        out.unresolved.push(self.cluster(&c2, level + 1, 1, depth_used, e.to_string()));
                    }
                }
            } else if depth == 0 {
                out.unresolved.push(self.cluster(&c2, level + 1, k, depth_used, "depth budget exhausted".into()));
            } else {
                let h2 = shift_scaled(&hn, &yb, p, prec);
                self.classify(h2, prec, c2, level + 1, k, depth - 1, out);
            }
        }
    }
}

fn count_stripped(g: &SparsePoly, p: u64, opts: &CountOptions) -> Result<Parts> {
    if g.terms().len() <= 1 {
        return Ok(Parts::default());
    }
    if opts.substitute_pth_powers && g.exponents().iter().all(|e| e % p == 0) {
        let inner_g = SparsePoly::new(g.terms().iter().map(|(e, c)| (e / p, c.clone())).collect())?;
        let inner = count_stripped(&inner_g, p, opts)?;
        return Ok(pth_roots(g, inner, p, opts));
    }
    let np = newton_polygon(g, p);
    let mut exact = ExactAnalysis::new(g, p);
    let mut out = Parts::default();
    for seg in &np.segments {
        let Some(m) = seg.root_valuation() else {
            continue;
        };
        let layer = Layer::new(g, p, m, opts);
        match binomial_residues(g, &layer.gm, p, seg) {
            Ok(residues) => {
                for r in residues {
                    layer.certify(&BigInt::from(r), 1, 1, 0, &mut out);
                }
            }
            Err(Error::NotApplicable(_)) => layer.general(&mut exact, &mut out)?,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// The unit `w` with `w^p = u`, known modulo `p^{k-1}`, when it exists.
fn unit_pth_root(u: &BigInt, k: u32, p: u64) -> Result<Option<(BigInt, u32)>> {
    if k < 3 {
        return Err(Error::PrecisionExhausted("too few digits to extract a p-th root".into()));
    }
    let p2 = pow_big(p, 2);
    if !pow_mod(u, p - 1, &p2).is_one() {
        return Ok(None);
    }
    let pb = BigInt::from(p);
    let p3 = pow_big(p, 3);
    let r = modp(u, &pb).to_u64().unwrap();
    let xi = teichmuller(p, r, k).integral_rep(k)?;
    let terms = vec![(0u64, -u.clone()), (p, BigInt::one())];
    for j in 0..p {
        let w0 = &xi * (BigInt::one() + &pb * j);
        if modp(&(pow_mod(&w0, p, &p3) - u), &p3).is_zero() {
            let l = lift_int(&terms, p, &w0, 3, k - 1, false)?;
            return Ok(Some((l.root, k - 1)));
        }
    }
    Err(Error::Internal("no starting point for the p-th root".into()))
}

/// Turns the roots of `G` into the roots of `g(x) = G(x^p)`: each root of `G`
/// has at most one `p`-th root in `Q_p`, with the same multiplicity.
fn pth_roots(g: &SparsePoly, inner: Parts, p: u64, opts: &CountOptions) -> Parts {
    let mut out = Parts { exhausted: inner.exhausted, ..Parts::default() };
    let pi = p as i64;
    for e in inner.entries {
        if e.valuation % pi != 0 {
            continue;
        }
        let m = e.valuation / pi;
        let u = e.value.unit().cloned().unwrap_or_default();
        let k = e.value.rel_precision().unwrap_or(0);
        let fail = |out: &mut Parts, err: Error| {
            out.exhausted |= matches!(err, Error::PrecisionExhausted(_));
            out.unresolved.push(UnresolvedCluster {
                valuation: m,
                center: None,
                level: 0,
                upper_bound: u64::from(e.multiplicity),
                depth_reached: 0,
                reason: format!("p-th root of a root of the substituted polynomial: {err}"),
            });
        };
        let (w, kw) = match unit_pth_root(&u, k, p) {
            Ok(Some(x)) => x,
            Ok(None) => continue,
            Err(err) => {
                fail(&mut out, err);
                continue;
            }
        };
        match e.certificate {
            Certificate::HenselSimple => {
                let layer = Layer::new(g, p, m, opts);
                layer.certify(&w, i64::from(kw), kw, 0, &mut out);
            }
            Certificate::ExactTorsion => out.entries.push(e),
            Certificate::ExactRational => {
                let exact = match e.exact {
                    Some(ExactPoint::Rational { value }) => {
                        match (exact::exact_root(value.numer(), p), exact::exact_root(value.denom(), p)) {
                            (Some(a), Some(b)) => ExactPoint::Rational { value: BigRational::new(a, b) },
                            _ => ExactPoint::Radical { radicand: value, index: p },
                        }
                    }
                    Some(ExactPoint::Radical { radicand, index }) => {
                        ExactPoint::Radical { radicand, index: index * p }
                    }
                    other => {
                        fail(&mut out, Error::Internal(format!("unexpected exact point {other:?}")));
                        continue;
                    }
                };
                out.entries.push(RootEntry {
                    value: PadicNum::from_parts(p, m, &w, kw).expect("unit"),
                    valuation: m,
                    multiplicity: e.multiplicity,
                    certificate: Certificate::ExactRational,
                    exact: Some(exact),
                    hensel: None,
                });
            }
        }
    }
    for c in inner.unresolved {
        if c.valuation % pi != 0 {
            continue;
        }
        out.unresolved.push(UnresolvedCluster {
            valuation: c.valuation / pi,
            center: None,
            reason: format!("p-th roots of an unresolved cluster ({})", c.reason),
            ..c
        });
    }
    out
}

/// Counts the roots with valuation `-slope` attached to a two-point segment
/// of the Newton polygon of `f`, when `p` does not divide its width.
pub fn segment_root_count(f: &SparsePoly, p: u64, segment: &Segment, prec: u32) -> Result<SegmentCount> {
    check_prime(p)?;
    let delta = segment.end.0 - segment.start.0;
    if delta % p == 0 {
        return Err(Error::NotApplicable(format!("p = {p} divides the segment width {delta}")));
    }
    let Some(m) = segment.root_valuation() else {
        if points_on(f, p, segment).len() != 2 {
            return Err(Error::NotApplicable("segment carries more than two support points".into()));
        }
        return Ok(SegmentCount { count: 0, roots: Vec::new() });
    };
    let (a0, g) = f.strip_monomial();
    let shifted = Segment {
        start: (segment.start.0 - a0, segment.start.1),
        end: (segment.end.0 - a0, segment.end.1),
        ..segment.clone()
    };
    let opts = CountOptions { prec, ..CountOptions::default() };
    let layer = Layer::new(&g, p, m, &opts);
    let residues = binomial_residues(&g, &layer.gm, p, &shifted)?;
    let mut out = Parts::default();
    for r in residues {
        layer.certify(&BigInt::from(r), 1, 1, 0, &mut out);
    }
    if let Some(c) = out.unresolved.first() {
        return Err(Error::PrecisionExhausted(c.reason.clone()));
    }
    Ok(SegmentCount { count: out.entries.len() as u64, roots: out.entries })
}

/// Certified roots of `f` in `Q_p^*`, with multiplicities where they are
/// provable and unresolved clusters elsewhere.
pub fn count_roots(f: &SparsePoly, p: u64, opts: &CountOptions) -> Result<RootReport> {
    check_prime(p)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if opts.prec < 2 {
        return Err(Error::InvalidInput("precision must be at least 2".into()));
    }
    let (_, g) = f.strip_monomial();
    let mut parts = count_stripped(&g, p, opts)?;
    parts.entries.sort_by(|a, b| a.value.digit_key().cmp(&b.value.digit_key()));
    parts
        .unresolved
        .sort_by_key(|c| (c.valuation, c.center.as_ref().map(|x| x.digit_key()), c.level));
    let with_mult: u64 = parts.entries.iter().map(|e| u64::from(e.multiplicity)).sum();
    let pending: u64 = parts.unresolved.iter().map(|c| c.upper_bound).sum();
    Ok(RootReport {
        p,
        options: opts.clone(),
        polynomial: f.to_string(),
        t: f.t().unwrap_or(0),
        newton_polygon: newton_polygon(f, p),
        totals: Totals {
            count_distinct: parts.entries.len() as u64,
            count_with_multiplicity: with_mult,
            upper_bound_with_multiplicity: with_mult + pending,
        },
        entries: parts.entries,
        unresolved: parts.unresolved,
        precision_exhausted: parts.exhausted,
    })
}

/// Compares the counts of a report with the closed-form upper bounds.
pub fn verify_upper_bounds(report: &RootReport, t: u64, p: u64) -> Vec<BoundVerdict> {
    let observed = report.totals.count_with_multiplicity;
    let params = FieldParams::new(p, 1, 1);
    let nb = new_upper_bound(t, &params).ok().and_then(|b| b.to_u64());
    // rational roots, counting ±1 which are reported as Teichmüller points
    let rational: u64 = report
        .entries
        .iter()
        .filter(|e| match &e.exact {
            Some(ExactPoint::Rational { .. }) => true,
            Some(ExactPoint::Teichmuller { order, .. }) => *order <= 2,
            _ => false,
        })
        .map(|e| u64::from(e.multiplicity))
        .sum();
    vec![
        BoundVerdict {
            name: "new_upper_bound".into(),
            bound: nb,
            observed,
            applicable: nb.is_some(),
            satisfied: nb.map(|b| observed <= b),
        },
        BoundVerdict {
            name: "descartes_rational".into(),
            bound: Some(2 * t),
            observed: rational,
            applicable: true,
            satisfied: Some(rational <= 2 * t),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u64, i64)]) -> SparsePoly {
        SparsePoly::from_ints(terms)
    }

    fn opts(prec: u32, depth: u32) -> CountOptions {
        CountOptions { prec, max_depth: depth, ..CountOptions::default() }
    }

    #[test]
    fn dominated_orders() {
        // 20 = 202 in base 3
        assert_eq!(next_dominated(20, 0, 3), Some(0));
        assert_eq!(next_dominated(20, 3, 3), Some(9));
        assert_eq!(next_dominated(20, 12, 3), Some(18));
        assert_eq!(next_dominated(20, 21, 3), None);
    }

    #[test]
    fn large_residue_multiplicity() {
        // x^(20 + 2·3^17) − x^20 has 1 as a root of multiplicity 3^17 mod 3
        let e = 20 + 2 * 3u64.pow(17);
        let terms = vec![(20, BigInt::from(-1)), (e, BigInt::from(1))];
        assert_eq!(sparse_residue_multiplicity(&terms, 1, 3), 3u64.pow(17));
        let terms = vec![(0, BigInt::from(-1)), (2, BigInt::from(1))];
        assert_eq!(sparse_residue_multiplicity(&terms, 1, 5), 1);
        assert_eq!(sparse_residue_multiplicity(&terms, 2, 5), 0);
    }

    #[test]
    fn segment_examples() {
        let f = poly(&[(0, -1), (2, 1)]);
        let seg = &newton_polygon(&f, 5).segments[0];
        assert_eq!(segment_root_count(&f, 5, seg, 20).unwrap().count, 2);
        let f = poly(&[(0, -2), (2, 1)]);
        let seg = &newton_polygon(&f, 5).segments[0];
        assert_eq!(segment_root_count(&f, 5, seg, 20).unwrap().count, 0);
        let f = poly(&[(0, -1), (18, 1)]);
        let seg = &newton_polygon(&f, 3).segments[0];
        assert!(matches!(segment_root_count(&f, 3, seg, 20), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn binomial_x4_minus_1() {
        let r = count_roots(&poly(&[(0, -1), (4, 1)]), 5, &opts(20, 6)).unwrap();
        assert_eq!(r.totals.count_with_multiplicity, 4);
        assert!(r.is_certified());
        for e in &r.entries {
            assert_eq!(e.value.pow(4), PadicNum::from_rational(1, 1, 5, 20).unwrap());
        }
    }

    #[test]
    fn double_roots_at_plus_minus_one() {
        // besides ±1 (double) and the two roots of valuation 1, the cofactor
        // (x^20 - 10x^2 + 9)/(x^2 - 1)^2 has simple roots congruent to ±7 mod 27
        let r = count_roots(&poly(&[(0, 9), (2, -10), (20, 1)]), 3, &opts(40, 8)).unwrap();
        assert!(r.is_certified(), "{:?}", r.unresolved);
        assert_eq!(r.totals.count_distinct, 6);
        assert_eq!(r.totals.count_with_multiplicity, 8);
        let torsion: Vec<_> = r.entries.iter().filter(|e| e.certificate == Certificate::ExactTorsion).collect();
        assert_eq!(torsion.len(), 2);
        assert!(torsion.iter().all(|e| e.multiplicity == 2));
        let v1: Vec<_> = r.entries.iter().filter(|e| e.valuation == 1).collect();
        assert_eq!(v1.len(), 2);
        let mut near7: Vec<BigInt> = r
            .entries
            .iter()
            .filter(|e| e.certificate == Certificate::HenselSimple && e.valuation == 0)
            .map(|e| e.value.integral_rep(3).unwrap())
            .collect();
        near7.sort();
        assert_eq!(near7, vec![BigInt::from(7), BigInt::from(20)]);
        let verdicts = verify_upper_bounds(&r, 2, 3);
        assert!(!verdicts[0].applicable);
        assert_eq!(verdicts[0].observed, 8);
    }

    #[test]
    fn extremal_trinomial_q5() {
        let r = count_roots(&poly(&[(0, 625), (4, -626), (2504, 1)]), 5, &opts(40, 8)).unwrap();
        assert!(r.is_certified(), "{:?}", r.unresolved);
        assert_eq!(r.totals.count_distinct, 8);
        assert_eq!(r.totals.count_with_multiplicity, 12);
        let verdicts = verify_upper_bounds(&r, 2, 5);
        assert_eq!(verdicts[0].bound, Some(12));
        assert_eq!(verdicts[0].satisfied, Some(true));
    }

    #[test]
    fn rational_double_root() {
        // (x - 2)^2 (x + 3) over Q_5: both roots are 2 mod 5
        let r = count_roots(&poly(&[(0, 12), (1, -8), (2, -1), (3, 1)]), 5, &opts(30, 8)).unwrap();
        assert!(r.is_certified());
        assert_eq!(r.totals.count_distinct, 2);
        assert_eq!(r.totals.count_with_multiplicity, 3);
    }

    #[test]
    fn pth_power_substitution_agrees() {
        // x^15 - 8 = (x^3)^5 - 8 over Q_5 and Q_3; and x^6 - 1 over Q_3
        let cases = [(vec![(0, -8), (15, 1)], 5), (vec![(0, -8), (15, 1)], 3), (vec![(0, -1), (6, 1)], 3)];
        for (terms, p) in cases {
            let f = poly(&terms);
            let a = count_roots(&f, p, &opts(30, 8)).unwrap();
            let b = count_roots(&f, p, &CountOptions { substitute_pth_powers: false, ..opts(30, 8) }).unwrap();
            assert_eq!(a.totals, b.totals, "{f} over Q_{p}");
            assert!(a.is_certified() && b.is_certified());
        }
    }

    #[test]
    fn no_roots_for_constant_after_stripping() {
        let r = count_roots(&poly(&[(7, 3)]), 7, &opts(10, 2)).unwrap();
        assert_eq!(r.totals.count_with_multiplicity, 0);
        assert!(count_roots(&poly(&[(0, 1), (1, 1)]), 2, &opts(10, 2)).is_err());
    }

    #[test]
    fn fractional_slopes_have_no_roots() {
        // x^2 - 5 over Q_5
        let r = count_roots(&poly(&[(0, -5), (2, 1)]), 5, &opts(20, 4)).unwrap();
        assert_eq!(r.totals.upper_bound_with_multiplicity, 0);
    }
}
