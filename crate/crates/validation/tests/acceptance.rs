//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use padroot::bounds::{d_t, lenstra_c, ScanConfig};
use padroot::explore::{RESULTS_FILE, SUMMARY_FILE};
use padroot::extremal::{build_ft, check_conditions, has_expected_slopes, ExtremalOptions};
use padroot::padic::{exponent_sequence, PadicNum};
use padroot::rootcount::{Certificate, RootReport};
use padroot::vandermonde::{identity_grid, w_grid, w_scaled, w_standard_closed_form};
use padroot::{count_roots, CountOptions, SparsePoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

// Pinned budgets and corpus parameters. All numeric checks are exact.
const BUDGET_1: Duration = Duration::from_secs(60);
const BUDGET_2: Duration = Duration::from_secs(30);
const BUDGET_3: Duration = Duration::from_secs(5);
const BUDGET_4: Duration = Duration::from_secs(5);
const BUDGET_5: Duration = Duration::from_secs(60);
const BUDGET_6: Duration = Duration::from_secs(600);
const BUDGET_8: Duration = Duration::from_secs(30);
const BUDGET_9_PER_BUILD: Duration = Duration::from_secs(600);
const BUDGET_10: Duration = Duration::from_secs(5);

const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 500;
const CORPUS_PRIMES: [u64; 3] = [3, 5, 7];
const CORPUS_MAX_T: usize = 3;
const CORPUS_MAX_EXP: u64 = 50;
const CORPUS_COEFF: i64 = 20;
/// Roots are compared modulo `p^COMPARE_DIGITS` of their unit part.
const COMPARE_DIGITS: u32 = 6;
/// Non-simple residue classes are refined this far before they are taken
/// to hold a multiple root.
const ORACLE_DEPTH: u32 = 20;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn within(v: Verdict, elapsed: Duration, budget: Duration) -> Verdict {
    if elapsed > budget {
        verdict(false, format!("{}; took {:.1?}, budget {:?}", v.detail, elapsed, budget))
    } else {
        v
    }
}

fn poly(terms: &[(u64, i64)]) -> SparsePoly {
    SparsePoly::from_ints(terms)
}

fn opts(prec: u32, depth: u32) -> CountOptions {
    CountOptions { prec, max_depth: depth, ..CountOptions::default() }
}

fn totals(r: &RootReport) -> (u64, u64) {
    (r.totals.count_distinct, r.totals.count_with_multiplicity)
}

fn c1_identity_grid() -> Verdict {
    let t0 = Instant::now();
    let v = match identity_grid(3, 7) {
        Ok(rows) => {
            let failed: Vec<_> = rows.iter().filter(|r| !r.passed()).map(|r| (r.alpha.clone(), r.s.clone())).collect();
            let zero = rows.iter().filter(|r| !r.p_nonzero).count();
            verdict(
                failed.is_empty() && !rows.is_empty(),
                format!("{} (alpha, s) rows, {} failed {:?}, {} with P = 0", rows.len(), failed.len(), failed, zero),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    };
    within(v, t0.elapsed(), BUDGET_1)
}

fn c2_w_grid() -> Verdict {
    let t0 = Instant::now();
    let v = match w_grid(4, 8) {
        Ok(rows) => {
            let failed = rows.iter().filter(|r| !r.passed()).count();
            let closed: Vec<usize> = (1..=4)
                .filter(|&t| {
                    let st: Vec<u64> = (1..=t as u64).collect();
                    w_scaled(&st) != w_standard_closed_form(t)
                })
                .collect();
            verdict(
                failed == 0 && closed.is_empty(),
                format!("{} beta rows, {} failed; closed form mismatches at t in {:?}", rows.len(), failed, closed),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    };
    within(v, t0.elapsed(), BUDGET_2)
}

fn c3_binomials() -> Verdict {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    for p in [3u64, 5, 7, 11] {
        let f = poly(&[(0, -1), (p - 1, 1)]);
        match count_roots(&f, p, &CountOptions::default()) {
            Ok(r) => {
                let simple = r.entries.iter().all(|e| e.multiplicity == 1);
                if !(r.is_certified() && simple && totals(&r) == (p - 1, p - 1)) {
                    bad.push(format!("p={p}: {:?}", totals(&r)));
                }
            }
            Err(e) => bad.push(format!("p={p}: {e}")),
        }
    }
    within(verdict(bad.is_empty(), format!("p in {{3,5,7,11}}; mismatches {bad:?}")), t0.elapsed(), BUDGET_3)
}

fn c4_example_q3() -> Verdict {
    const EXPECTED: (u64, u64) = (4, 6);
    let t0 = Instant::now();
    let f = poly(&[(0, 9), (2, -10), (20, 1)]);
    let v = match count_roots(&f, 3, &opts(40, 8)) {
        Ok(r) => {
            let got = totals(&r);
            let torsion: Vec<_> = r
                .entries
                .iter()
                .filter(|e| e.certificate == Certificate::ExactTorsion && e.multiplicity == 2)
                .collect();
            let val1 = r
                .entries
                .iter()
                .filter(|e| e.certificate == Certificate::HenselSimple && e.valuation == 1)
                .count();
            let oracle = oracle_roots(&[(0, 9), (2, -10), (20, 1)], 3);
            let pass = r.is_certified() && got == EXPECTED && torsion.len() == 2 && val1 == 2;
            verdict(
                pass,
                format!(
                    "expected {:?}, certified {:?} ({} double torsion roots, {} simple roots of valuation 1); \
                     independent residue oracle finds {} simple and {} multiple root classes",
                    EXPECTED,
                    got,
                    torsion.len(),
                    val1,
                    oracle.sure.len(),
                    oracle.possible.len()
                ),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    };
    within(v, t0.elapsed(), BUDGET_4)
}

fn c5_example_q5() -> Verdict {
    let t0 = Instant::now();
    let f = poly(&[(0, 625), (4, -626), (2504, 1)]);
    let v = match count_roots(&f, 5, &CountOptions::default()) {
        Ok(r) => verdict(r.is_certified() && totals(&r) == (8, 12), format!("certified {:?}, expected (8, 12)", totals(&r))),
        Err(e) => verdict(false, e.to_string()),
    };
    within(v, t0.elapsed(), BUDGET_5)
}

// Independent oracle: exhaustive residue refinement on dense integer
// polynomials, with no code shared with the library's root counter.

type Class = (i64, BigInt);

#[derive(Default)]
struct OracleRoots {
    /// Classes `(valuation, unit mod p^6)` holding a simple root.
    sure: BTreeSet<Class>,
    /// Classes still multiple after `ORACLE_DEPTH` refinement steps.
    possible: BTreeSet<Class>,
}

fn vp(n: &BigInt, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    v
}

fn reduce(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

/// Coefficients of `h(y0 + p y)` modulo `m`.
fn shift_and_scale(h: &[BigInt], y0: u64, p: u64, m: &BigInt) -> Vec<BigInt> {
    let mut a = h.to_vec();
    let y = BigInt::from(y0);
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &a[j + 1] * &y;
            a[j] = reduce(&(&a[j] + t), m);
        }
    }
    let mut pk = BigInt::one();
    for c in a.iter_mut() {
        *c = reduce(&(&*c * &pk), m);
        pk *= p;
    }
    a
}

/// Multiplicity of `y0` as a root of `h` modulo `p`.
fn mult_mod_p(h: &[BigInt], y0: u64, p: u64) -> usize {
    let pb = BigInt::from(p);
    let shifted = shift_and_scale(h, y0, 1, &pb);
    shifted.iter().position(|c| !c.is_zero()).unwrap_or(shifted.len())
}

struct Refiner {
    p: u64,
    v: i64,
    out: OracleRoots,
}

impl Refiner {
    fn record(&mut self, a: &BigInt, sure: bool) {
        let m = BigInt::from(self.p).pow(COMPARE_DIGITS);
        let key = (self.v, reduce(a, &m));
        if sure {
            self.out.sure.insert(key);
        } else {
            self.out.possible.insert(key);
        }
    }

    /// `h(y)` represents `g(a + p^level y)` divided by its content, known
    /// modulo `p^prec`.
    fn refine(&mut self, h: Vec<BigInt>, prec: u32, level: u32, a: BigInt, simple: bool) {
        let p = self.p;
        let pb = BigInt::from(p);
        let content = h.iter().filter(|c| !c.is_zero()).map(|c| vp(c, p)).min().unwrap_or(prec).min(prec);
        if content + 2 > prec {
            self.record(&a, false);
            return;
        }
        let div = pb.pow(content);
        let prec = prec - content;
        let m = pb.pow(prec);
        let h: Vec<BigInt> = h.iter().map(|c| reduce(&(c / &div), &m)).collect();
        let start = if level == 0 { 1 } else { 0 };
        for y0 in start..p {
            let mu = mult_mod_p(&h, y0, p);
            if mu == 0 {
                continue;
            }
            let child = &a + BigInt::from(y0) * pb.pow(level);
            let simple = simple || mu == 1;
            if simple && level + 1 >= COMPARE_DIGITS {
                self.record(&child, true);
            } else if !simple && level + 1 >= ORACLE_DEPTH {
                self.record(&child, false);
            } else {
                let next = shift_and_scale(&h, y0, p, &m);
                self.refine(next, prec, level + 1, child, simple);
            }
        }
    }
}

/// Root classes of an integer sparse polynomial in `Q_p^*`.
fn oracle_roots(terms: &[(u64, i64)], p: u64) -> OracleRoots {
    let vals: Vec<i64> = terms.iter().map(|&(_, c)| i64::from(vp(&BigInt::from(c), p))).collect();
    let spread = vals.iter().max().unwrap() - vals.iter().min().unwrap();
    let mut out = OracleRoots::default();
    for v in -spread..=spread {
        // g(u) = f(p^v u) scaled to a primitive integer polynomial
        let shift: Vec<i64> = terms.iter().map(|&(e, _)| v * e as i64).collect();
        let low = *shift.iter().min().unwrap();
        let deg = terms.iter().map(|t| t.0).max().unwrap() as usize;
        let mut g = vec![BigInt::zero(); deg + 1];
        for (&(e, c), &s) in terms.iter().zip(&shift) {
            g[e as usize] = BigInt::from(c) * BigInt::from(p).pow((s - low) as u32);
        }
        let prec = 4 * ORACLE_DEPTH + 40;
        let m = BigInt::from(p).pow(prec);
        let g: Vec<BigInt> = g.iter().map(|c| reduce(c, &m)).collect();
        let mut r = Refiner { p, v, out: OracleRoots::default() };
        r.refine(g, prec, 0, BigInt::zero(), false);
        out.sure.extend(r.out.sure);
        out.possible.extend(r.out.possible);
    }
    out
}

fn counted_classes(r: &RootReport, p: u64) -> Option<BTreeSet<Class>> {
    let m = BigInt::from(p).pow(COMPARE_DIGITS);
    let mut s = BTreeSet::new();
    for e in &r.entries {
        if e.value.rel_precision()? < COMPARE_DIGITS {
            return None;
        }
        s.insert((e.valuation, reduce(e.value.unit()?, &m)));
    }
    Some(s)
}

/// Whether `class` lies in the disk of an unresolved cluster.
fn in_cluster(r: &RootReport, class: &Class, p: u64) -> bool {
    r.unresolved.iter().any(|c| {
        c.valuation == class.0
            && match &c.center {
                None => true,
                Some(center) => {
                    let digits = c.level.min(COMPARE_DIGITS);
                    let m = BigInt::from(p).pow(digits);
                    center.unit().map_or(true, |u| reduce(u, &m) == reduce(&class.1, &m))
                }
            }
    })
}

fn random_corpus(p: u64) -> Vec<Vec<(u64, i64)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ p);
    (0..CORPUS_SIZE)
        .map(|_| {
            let t = rng.gen_range(1..=CORPUS_MAX_T);
            let mut exps = BTreeSet::new();
            while exps.len() < t + 1 {
                exps.insert(rng.gen_range(0..=CORPUS_MAX_EXP));
            }
            exps.into_iter()
                .map(|e| {
                    let mut c = 0;
                    while c == 0 {
                        c = rng.gen_range(-CORPUS_COEFF..=CORPUS_COEFF);
                    }
                    (e, c)
                })
                .collect()
        })
        .collect()
}

struct CorpusOutcome {
    p: u64,
    disagreements: Vec<String>,
    uncertified: usize,
    multiple_classes: usize,
    trinomials: usize,
    bound_violations: Vec<String>,
}

fn run_corpus(p: u64) -> CorpusOutcome {
    let mut out = CorpusOutcome {
        p,
        disagreements: Vec::new(),
        uncertified: 0,
        multiple_classes: 0,
        trinomials: 0,
        bound_violations: Vec::new(),
    };
    for terms in random_corpus(p) {
        let f = poly(&terms);
        let report = match count_roots(&f, p, &opts(40, 8)) {
            Ok(r) => r,
            Err(e) => {
                out.disagreements.push(format!("{f}: {e}"));
                continue;
            }
        };
        if terms.len() == 3 && p >= 5 {
            out.trinomials += 1;
            let b = report.totals.upper_bound_with_multiplicity;
            if b > 3 * (p - 1) {
                out.bound_violations.push(format!("{f}: at most {b}"));
            }
        }
        if !report.is_certified() {
            out.uncertified += 1;
        }
        let oracle = oracle_roots(&terms, p);
        out.multiple_classes += oracle.possible.len();
        let Some(counted) = counted_classes(&report, p) else {
            out.disagreements.push(format!("{f}: root known to fewer than {COMPARE_DIGITS} digits"));
            continue;
        };
        for c in &oracle.sure {
            if !counted.contains(c) && !in_cluster(&report, c, p) {
                out.disagreements.push(format!("{f}: missed root class {c:?}"));
            }
        }
        for c in &oracle.possible {
            if !counted.contains(c) && !in_cluster(&report, c, p) {
                out.disagreements.push(format!("{f}: missed multiple root class {c:?}"));
            }
        }
        for c in &counted {
            if !oracle.sure.contains(c) && !oracle.possible.contains(c) {
                out.disagreements.push(format!("{f}: spurious root class {c:?}"));
            }
        }
    }
    out
}

fn c6_c7_corpus() -> (Verdict, Verdict) {
    let t0 = Instant::now();
    let results: Vec<CorpusOutcome> = std::thread::scope(|s| {
        let hs: Vec<_> = CORPUS_PRIMES.iter().map(|&p| s.spawn(move || run_corpus(p))).collect();
        hs.into_iter().map(|h| h.join().expect("corpus worker")).collect()
    });
    let elapsed = t0.elapsed();
    let dis: usize = results.iter().map(|r| r.disagreements.len()).sum();
    let mut d6 = format!("{} polynomials per p in {:?}; {dis} disagreements", CORPUS_SIZE, CORPUS_PRIMES);
    for r in &results {
        d6 += &format!(
            "; p={}: {} uncertified, {} multiple classes",
            r.p, r.uncertified, r.multiple_classes
        );
        for d in r.disagreements.iter().take(3) {
            d6 += &format!(" [{d}]");
        }
    }
    let v6 = within(verdict(dis == 0, d6), elapsed, BUDGET_6);
    let viol: usize = results.iter().map(|r| r.bound_violations.len()).sum();
    let tri: usize = results.iter().map(|r| r.trinomials).sum();
    let mut d7 = format!("{tri} trinomials with p in {{5,7}}; {viol} with upper bound above 3(p-1)");
    for r in &results {
        for d in r.bound_violations.iter().take(3) {
            d7 += &format!(" [{d}]");
        }
    }
    (v6, verdict(viol == 0 && tri > 0, d7))
}

fn c8_lemma_grid() -> Verdict {
    let t0 = Instant::now();
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23];
    let mut checked = 0;
    let mut bad = Vec::new();
    for &p in &primes {
        for t in 1..=5u64 {
            for e in 1..=3u64 {
                if p <= t + e {
                    continue;
                }
                checked += 1;
                let r = num_rational::BigRational::new(BigInt::one(), BigInt::from(e));
                match lenstra_c(p, t, &r, &ScanConfig::default()) {
                    Ok(c) if c.value == t => {}
                    Ok(c) => bad.push(format!("C({p},{t},1/{e}) = {}", c.value)),
                    Err(err) => bad.push(format!("C({p},{t},1/{e}): {err}")),
                }
            }
        }
    }
    let mut fact = BigInt::one();
    for t in 1..=6u64 {
        fact *= t;
        if d_t(t, t).ok() != Some(fact.clone()) {
            bad.push(format!("d_{t}({t}) != {t}!"));
        }
    }
    if d_t(2, 3).ok() != Some(BigInt::from(6)) {
        bad.push("d_2(3) != 6".into());
    }
    if d_t(2, 4).ok() != Some(BigInt::from(24)) {
        bad.push("d_2(4) != 24".into());
    }
    within(
        verdict(bad.is_empty(), format!("{checked} (p, t, e) triples, d_t(t) for t <= 6, d_2(3), d_2(4); failures {bad:?}")),
        t0.elapsed(),
        BUDGET_8,
    )
}

fn c9_builds() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for (t, q) in [(2u64, 3u64), (2, 5), (3, 3)] {
        let t0 = Instant::now();
        let target = (2 * t - 1) * (q - 1);
        match build_ft(t, q, &ExtremalOptions::default()) {
            Ok(b) => {
                let simple = b.report.entries.iter().filter(|e| e.multiplicity == 1).count() as u64;
                let conds = check_conditions(&b.poly, &b.report, t, q);
                let conds_ok = conds.iter().all(|c| c.passed);
                let logged = b.construction_log.len() as u64 == t - 1
                    && b.construction_log.iter().all(|s| s.conditions.iter().all(|c| c.passed));
                let slopes = has_expected_slopes(&b.poly, q, t);
                let elapsed = t0.elapsed();
                let ok = b.report.is_certified()
                    && simple >= target
                    && conds_ok
                    && logged
                    && slopes
                    && elapsed <= BUDGET_9_PER_BUILD;
                pass &= ok;
                parts.push(format!(
                    "(t={t}, q={q}) {} simple of {target} needed, conditions {}, log {}, slopes {}, {:.1?}",
                    simple,
                    if conds_ok { "ok" } else { "FAILED" },
                    if logged { "ok" } else { "FAILED" },
                    if slopes { "ok" } else { "FAILED" },
                    elapsed
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("(t={t}, q={q}) {e}"));
            }
        }
    }
    verdict(pass, parts.join("; "))
}

fn c10_exponent_sequence() -> Verdict {
    let t0 = Instant::now();
    let p = 5u64;
    let r = PadicNum::from_int(&BigInt::from(6), p, 12).expect("6 is a 5-adic integer");
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut bad = Vec::new();
    for _ in 0..10 {
        // admissible: y = 1 mod 5
        let y_int = BigInt::from(1 + 5 * rng.gen_range(0..5u64.pow(5)));
        let y = PadicNum::from_int(&y_int, p, 12).expect("integral");
        match exponent_sequence(&r, &y, p, 6, 1, &BigInt::zero()) {
            Ok(seq) if seq.len() == 6 => {
                for (i, a) in seq.iter().enumerate() {
                    let mi = BigInt::from(p).pow(i as u32 + 1);
                    let lhs = BigInt::from(6).modpow(a, &mi);
                    if lhs != reduce(&y_int, &mi) {
                        bad.push(format!("y={y_int} i={} alpha={a}", i + 1));
                    }
                }
            }
            Ok(seq) => bad.push(format!("y={y_int}: {} terms", seq.len())),
            Err(e) => bad.push(format!("y={y_int}: {e}")),
        }
    }
    within(verdict(bad.is_empty(), format!("10 values of y, i <= 6; failures {bad:?}")), t0.elapsed(), BUDGET_10)
}

fn cli(args: &[&str]) -> i32 {
    let mut out = Vec::new();
    let mut err = Vec::new();
    padroot_cli::run_with_env(std::iter::once("padroot").chain(args.iter().copied()), None, &mut out, &mut err)
}

fn c11_determinism() -> Verdict {
    let dirs: Vec<tempfile::TempDir> = (0..3).map(|_| tempfile::tempdir().expect("temp dir")).collect();
    let run = |dir: &tempfile::TempDir, workers: &str| {
        let path = dir.path().to_str().expect("utf-8 path").to_string();
        cli(&["search", "--p", "5", "--t", "2", "--max-exp", "40", "--seed", "7", "--count", "300", "--workers", workers, "--out", &path])
    };
    let codes = [run(&dirs[0], "4"), run(&dirs[1], "4"), run(&dirs[2], "1")];
    let read = |d: &tempfile::TempDir, f: &str| std::fs::read(d.path().join(f)).unwrap_or_default();
    let same_seed = read(&dirs[0], RESULTS_FILE) == read(&dirs[1], RESULTS_FILE)
        && read(&dirs[0], SUMMARY_FILE) == read(&dirs[1], SUMMARY_FILE);
    let stats = |d: &tempfile::TempDir| {
        serde_json::from_slice::<serde_json::Value>(&read(d, SUMMARY_FILE)).ok().map(|v| v["stats"].clone())
    };
    let workers_agree = read(&dirs[0], RESULTS_FILE) == read(&dirs[2], RESULTS_FILE) && stats(&dirs[0]) == stats(&dirs[2]);
    let rows = read(&dirs[0], RESULTS_FILE).iter().filter(|&&b| b == b'\n').count();
    verdict(
        codes == [0, 0, 0] && same_seed && workers_agree && rows > 1,
        format!(
            "exit codes {codes:?}; repeated run byte-identical: {same_seed}; 4 vs 1 workers agree: {workers_agree}; {rows} csv lines"
        ),
    )
}

fn main() {
    let mut results: Vec<(u32, &str, Verdict)> = Vec::new();
    let mut report = |n: u32, name: &'static str, v: Verdict| {
        println!("criterion {n:>2} {}: {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        results.push((n, name, v));
    };
    report(1, "confluent Vandermonde identity grid", c1_identity_grid());
    report(2, "W and Q grid", c2_w_grid());
    report(3, "binomial sharpness", c3_binomials());
    report(4, "x^20 - 10x^2 + 9 over Q_3", c4_example_q3());
    report(5, "x^2504 - 626x^4 + 625 over Q_5", c5_example_q5());
    let (v6, v7) = c6_c7_corpus();
    report(6, "oracle equivalence", v6);
    report(7, "trinomial upper bound", v7);
    report(8, "lenstra C and d_t", c8_lemma_grid());
    report(9, "inductive construction", c9_builds());
    report(10, "exponent sequence", c10_exponent_sequence());
    report(11, "search determinism", c11_determinism());
    let failed: Vec<u32> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    println!("acceptance: {}/{} criteria passed", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
