//! Deterministic parallel sweeps over families of sparse polynomials.
//!
//! Candidates are numbered; a candidate is a function of its index alone, so
//! the result table does not depend on the number of workers. Each batch is
//! split statically across scoped threads and merged back by index.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::rootcount::{count_roots, verify_upper_bounds, CountOptions, RootReport};
use crate::sparsepoly::SparsePoly;
use num_integer::Integer;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fs::{self, File, OpenOptions};
use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};

pub const MAX_CANDIDATES: u64 = 10_000_000;
pub const MAX_T: usize = 5;
pub const MAX_WORKERS: usize = 256;
const BATCH_PER_WORKER: u64 = 64;

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const CHECKPOINT_FILE: &str = "checkpoint.json";
pub const VIOLATION_FILE: &str = "violation.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CoeffMode {
    /// Every coefficient runs over the balanced nonzero residues mod `p^k`.
    Exhaustive { k: u32 },
    /// `count` candidates with coefficients uniform in `[-bound, bound] \ {0}`.
    Random { seed: u64, count: u64, bound: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub p: u64,
    /// Number of terms minus one.
    pub t: usize,
    /// Largest exponent allowed.
    pub exponent_bound: u64,
    pub coeff_mode: CoeffMode,
    pub prec: u32,
    pub depth: u32,
    pub workers: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.p == 2 || !is_prime(self.p) {
            return Err(Error::InvalidInput(format!("p = {} must be an odd prime", self.p)));
        }
        if self.t == 0 || self.t > MAX_T {
            return Err(Error::InvalidInput(format!("t must be in 1..={MAX_T}")));
        }
        if self.exponent_bound < self.t as u64 {
            return Err(Error::InvalidInput("exponent bound is smaller than t".into()));
        }
        if self.exponent_bound > crate::extremal::DEFAULT_EXPONENT_CAP {
            return Err(Error::CapExceeded(format!("exponent bound {} is above the cap", self.exponent_bound)));
        }
        if self.workers == 0 || self.workers > MAX_WORKERS {
            return Err(Error::InvalidInput(format!("workers must be in 1..={MAX_WORKERS}")));
        }
        if self.prec < 2 {
            return Err(Error::InvalidInput("precision must be at least 2".into()));
        }
        match &self.coeff_mode {
            CoeffMode::Exhaustive { k } if *k == 0 => Err(Error::InvalidInput("k must be positive".into())),
            CoeffMode::Random { bound, .. } if *bound <= 0 => Err(Error::InvalidInput("coefficient bound must be positive".into())),
            _ => {
                let n = self.candidate_count()?;
                if n > MAX_CANDIDATES {
                    return Err(Error::CapExceeded(format!("{n} candidates, cap is {MAX_CANDIDATES}")));
                }
                Ok(())
            }
        }
    }

    /// Size of the index space (before canonical filtering).
    pub fn candidate_count(&self) -> Result<u64> {
        match &self.coeff_mode {
            CoeffMode::Random { count, .. } => Ok(*count),
            CoeffMode::Exhaustive { k } => {
                let too_big = || Error::CapExceeded("candidate space overflows".into());
                let half = self.p.checked_pow(*k).ok_or_else(too_big)? / 2;
                let per = (2 * half).checked_pow(self.t as u32 + 1).ok_or_else(too_big)?;
                choose(self.exponent_bound, self.t as u64).and_then(|c| c.checked_mul(per)).ok_or_else(too_big)
            }
        }
    }

    fn count_options(&self) -> CountOptions {
        CountOptions { prec: self.prec, max_depth: self.depth, ..CountOptions::default() }
    }
}

/// One line of the result table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub candidate: String,
    pub distinct: u64,
    pub with_mult: u64,
    pub unresolved: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremum {
    pub count: u64,
    pub candidate: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepStats {
    pub evaluated: u64,
    pub skipped_noncanonical: u64,
    pub unresolved: u64,
    pub max_distinct: Option<Extremum>,
    pub max_with_mult: Option<Extremum>,
    /// Candidates with more roots than the inductive construction provides.
    pub above_construction: Vec<Record>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub version: String,
    pub spec: SweepSpec,
    pub candidates: u64,
    pub next_index: u64,
    pub complete: bool,
    /// Upper bound on roots with multiplicity, when it applies to `(t, p)`.
    pub upper_bound: Option<u64>,
    /// `(2t − 1)(p − 1)`, reached by the inductive construction.
    pub construction_count: u64,
    pub stats: SweepStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub records: Vec<Record>,
    pub summary: SweepSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    spec: SweepSpec,
    next_index: u64,
    rows: u64,
    stats: SweepStats,
}

/// Dump written when a candidate breaks the upper bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationDump {
    pub candidate: String,
    pub bound: u64,
    pub report: RootReport,
}

/// Controls for a file-backed run.
#[derive(Debug, Default, Clone, Copy)]
pub struct RunControl<'a> {
    pub resume: bool,
    /// Stop after this many indices in this invocation (leaves a checkpoint).
    pub limit: Option<u64>,
    /// Checked between batches; when set the run stops after flushing.
    pub stop: Option<&'a AtomicBool>,
}

fn choose(n: u64, k: u64) -> Option<u64> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// The `rank`-th `k`-subset of `{1..n}` in lexicographic order.
fn unrank_subset(n: u64, k: u64, mut rank: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    let mut next = 1;
    for slot in 0..k {
        let left = k - slot - 1;
        loop {
            let c = choose(n - next, left).unwrap_or(u64::MAX);
            if rank < c {
                out.push(next);
                next += 1;
                break;
            }
            rank -= c;
            next += 1;
        }
    }
    out
}

/// Canonical representative under sign, content and `x ↦ −x`, all of which
/// preserve the number of roots and their multiplicities.
fn canonical(exps: &[u64], coeffs: &[i64]) -> Vec<i64> {
    let g = coeffs.iter().fold(0i64, |g, c| g.gcd(c)).max(1);
    let norm = |v: Vec<i64>| -> Vec<i64> {
        let s = if *v.last().unwrap() < 0 { -1 } else { 1 };
        v.into_iter().map(|c| c * s).collect()
    };
    let a = norm(coeffs.iter().map(|c| c / g).collect());
    let b = norm(a.iter().zip(exps).map(|(c, e)| if e % 2 == 1 { -c } else { *c }).collect());
    a.min(b)
}

fn candidate(spec: &SweepSpec, index: u64) -> Option<SparsePoly> {
    let t = spec.t as u64;
    let (exps, coeffs) = match &spec.coeff_mode {
        CoeffMode::Exhaustive { k } => {
            let half = (spec.p.pow(*k) / 2) as i64;
            let width = 2 * half as u64;
            let per = width.pow(spec.t as u32 + 1);
            let mut rest = index % per;
            let mut exps = vec![0];
            exps.extend(unrank_subset(spec.exponent_bound, t, index / per));
            let coeffs: Vec<i64> = (0..=t)
                .map(|_| {
                    let d = (rest % width) as i64;
                    rest /= width;
                    // −half..−1 then 1..half
                    if d < half {
                        d - half
                    } else {
                        d - half + 1
                    }
                })
                .collect();
            if canonical(&exps, &coeffs) != coeffs {
                return None;
            }
            (exps, coeffs)
        }
        CoeffMode::Random { seed, bound, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            rng.set_stream(index);
            let mut picked: Vec<u64> = sample(&mut rng, spec.exponent_bound as usize, spec.t)
                .into_iter()
                .map(|i| i as u64 + 1)
                .collect();
            picked.sort_unstable();
            let mut exps = vec![0];
            exps.extend(picked);
            let coeffs: Vec<i64> = (0..=t)
                .map(|_| {
                    let c = rng.gen_range(1..=*bound);
                    if rng.gen_bool(0.5) {
                        -c
                    } else {
                        c
                    }
                })
                .collect();
            let c = canonical(&exps, &coeffs);
            (exps, c)
        }
    };
    let terms: Vec<(u64, i64)> = exps.into_iter().zip(coeffs).collect();
    Some(SparsePoly::from_ints(&terms))
}

struct Outcome {
    record: Record,
    report: RootReport,
}

fn evaluate(spec: &SweepSpec, index: u64) -> Result<Option<Outcome>> {
    let Some(f) = candidate(spec, index) else {
        return Ok(None);
    };
    let report = count_roots(&f, spec.p, &spec.count_options())?;
    let record = Record {
        candidate: f.to_string(),
        distinct: report.totals.count_distinct,
        with_mult: report.totals.count_with_multiplicity,
        unresolved: !report.unresolved.is_empty(),
    };
    Ok(Some(Outcome { record, report }))
}

/// Evaluates `start..end` with static sharding: worker `w` takes the indices
/// congruent to `w` modulo the worker count.
fn evaluate_batch(spec: &SweepSpec, start: u64, end: u64) -> Result<Vec<Option<Outcome>>> {
    let w = spec.workers as u64;
    let mut shards: Vec<Result<Vec<(u64, Option<Outcome>)>>> = Vec::new();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..w)
            .map(|k| {
                s.spawn(move || {
                    let mut out = Vec::new();
                    let mut i = start + k;
                    while i < end {
                        out.push((i, evaluate(spec, i)?));
                        i += w;
                    }
                    Ok(out)
                })
            })
            .collect();
        for h in handles {
            shards.push(h.join().unwrap_or_else(|_| Err(Error::Internal("sweep worker panicked".into()))));
        }
    });
    let mut all = Vec::with_capacity((end - start) as usize);
    for s in shards {
        all.extend(s?);
    }
    all.sort_by_key(|(i, _)| *i);
    Ok(all.into_iter().map(|(_, o)| o).collect())
}

fn upper_bound(spec: &SweepSpec) -> Option<u64> {
    let params = crate::bounds::FieldParams::new(spec.p, 1, 1);
    crate::bounds::new_upper_bound(spec.t as u64, &params).ok().and_then(|b| num_traits::ToPrimitive::to_u64(&b))
}

impl SweepStats {
    fn absorb(&mut self, r: &Record, construction: u64) {
        self.evaluated += 1;
        self.unresolved += u64::from(r.unresolved);
        if self.max_distinct.as_ref().map_or(true, |m| r.distinct > m.count) {
            self.max_distinct = Some(Extremum { count: r.distinct, candidate: r.candidate.clone() });
        }
        if self.max_with_mult.as_ref().map_or(true, |m| r.with_mult > m.count) {
            self.max_with_mult = Some(Extremum { count: r.with_mult, candidate: r.candidate.clone() });
        }
        if r.with_mult > construction {
            self.above_construction.push(r.clone());
        }
    }
}

struct Sweeper<'a> {
    spec: &'a SweepSpec,
    total: u64,
    bound: Option<u64>,
    construction: u64,
}

impl<'a> Sweeper<'a> {
    fn new(spec: &'a SweepSpec) -> Result<Self> {
        spec.validate()?;
        let t = spec.t as u64;
        Ok(Sweeper {
            spec,
            total: spec.candidate_count()?,
            bound: upper_bound(spec),
            construction: (2 * t - 1) * (spec.p - 1),
        })
    }

    /// Folds one batch into `stats`, pushing records through `emit`. Stops at
    /// a bound violation, returning its dump.
    fn fold(
        &self,
        batch: Vec<Option<Outcome>>,
        stats: &mut SweepStats,
        emit: &mut dyn FnMut(&Record) -> Result<()>,
    ) -> Result<Option<ViolationDump>> {
        for o in batch {
            let Some(o) = o else {
                stats.skipped_noncanonical += 1;
                continue;
            };
            emit(&o.record)?;
            stats.absorb(&o.record, self.construction);
            let broken = verify_upper_bounds(&o.report, self.spec.t as u64, self.spec.p)
                .iter()
                .any(|v| v.name == "new_upper_bound" && v.satisfied == Some(false));
            if broken {
                return Ok(Some(ViolationDump {
                    candidate: o.record.candidate,
                    bound: self.bound.unwrap_or(0),
                    report: o.report,
                }));
            }
        }
        Ok(None)
    }

    fn summary(&self, next_index: u64, stats: SweepStats) -> SweepSummary {
        SweepSummary {
            version: env!("CARGO_PKG_VERSION").to_string(),
            spec: self.spec.clone(),
            candidates: self.total,
            next_index,
            complete: next_index >= self.total,
            upper_bound: self.bound,
            construction_count: self.construction,
            stats,
        }
    }

    fn batch_len(&self) -> u64 {
        self.spec.workers as u64 * BATCH_PER_WORKER
    }
}

fn violation_error(d: &ViolationDump) -> Error {
    Error::BoundViolation(format!(
        "{} has {} roots with multiplicity, above the bound {}",
        d.candidate, d.report.totals.count_with_multiplicity, d.bound
    ))
}

/// Runs the whole sweep in memory.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    let sw = Sweeper::new(spec)?;
    let mut stats = SweepStats::default();
    let mut records = Vec::new();
    let mut start = 0;
    while start < sw.total {
        let end = (start + sw.batch_len()).min(sw.total);
        let batch = evaluate_batch(spec, start, end)?;
        let dump = sw.fold(batch, &mut stats, &mut |r| {
            records.push(r.clone());
            Ok(())
        })?;
        if let Some(d) = dump {
            return Err(violation_error(&d));
        }
        start = end;
    }
    Ok(SweepResult { records, summary: sw.summary(start, stats) })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    // write-then-rename so an interrupted run never leaves half a file
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text + "\n")?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Keeps the header and the first `rows` records of the result file.
fn truncate_results(path: &Path, rows: u64) -> Result<()> {
    let mut rdr = csv::Reader::from_path(path).map_err(csv_err)?;
    let kept: Vec<Record> = rdr.deserialize().take(rows as usize).collect::<std::result::Result<_, _>>().map_err(csv_err)?;
    if kept.len() as u64 != rows {
        return Err(Error::InvalidInput("result file is shorter than the checkpoint".into()));
    }
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for r in &kept {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs the sweep with results in `dir`: `results.csv`, `summary.json` and a
/// `checkpoint.json` updated after every batch. With `resume`, an existing
/// checkpoint for the same spec is continued.
pub fn run_sweep_to_dir(spec: &SweepSpec, dir: &Path, ctl: RunControl) -> Result<SweepSummary> {
    let sw = Sweeper::new(spec)?;
    fs::create_dir_all(dir)?;
    let results = dir.join(RESULTS_FILE);
    let ckpt_path = dir.join(CHECKPOINT_FILE);

    let mut ck = Checkpoint { spec: spec.clone(), next_index: 0, rows: 0, stats: SweepStats::default() };
    let resuming = ctl.resume && ckpt_path.exists();
    if resuming {
        let text = fs::read_to_string(&ckpt_path)?;
        ck = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("bad checkpoint: {e}")))?;
        if ck.spec != *spec {
            return Err(Error::InvalidInput("checkpoint belongs to a different sweep spec".into()));
        }
        truncate_results(&results, ck.rows)?;
    }
    let file = if resuming {
        OpenOptions::new().append(true).open(&results)?
    } else {
        File::create(&results)?
    };
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if !resuming {
        w.write_record(["candidate", "distinct", "with_mult", "unresolved"]).map_err(csv_err)?;
    }

    let stop_at = ctl.limit.map_or(sw.total, |l| ck.next_index.saturating_add(l).min(sw.total));
    while ck.next_index < stop_at {
        if ctl.stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
            break;
        }
        let start = ck.next_index;
        let end = (start + sw.batch_len()).min(stop_at);
        let batch = evaluate_batch(spec, start, end)?;
        let mut rows = 0;
        let dump = sw.fold(batch, &mut ck.stats, &mut |r| {
            rows += 1;
            w.serialize(r).map_err(csv_err)
        })?;
        w.flush()?;
        ck.rows += rows;
        ck.next_index = end;
        write_json(&ckpt_path, &ck)?;
        if let Some(d) = dump {
            write_json(&dir.join(VIOLATION_FILE), &d)?;
            write_json(&dir.join(SUMMARY_FILE), &sw.summary(ck.next_index, ck.stats.clone()))?;
            return Err(violation_error(&d));
        }
    }
    let summary = sw.summary(ck.next_index, ck.stats);
    write_json(&dir.join(SUMMARY_FILE), &summary)?;
    Ok(summary)
}
