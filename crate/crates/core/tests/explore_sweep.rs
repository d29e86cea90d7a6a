use padroot::explore::{run_sweep, run_sweep_to_dir, CoeffMode, RunControl, SweepSpec, RESULTS_FILE, SUMMARY_FILE};
use std::fs;

fn spec(workers: usize) -> SweepSpec {
    SweepSpec {
        p: 3,
        t: 2,
        exponent_bound: 30,
        coeff_mode: CoeffMode::Random { seed: 11, count: 300, bound: 20 },
        prec: 24,
        depth: 6,
        workers,
    }
}

fn read(dir: &std::path::Path, name: &str) -> Vec<u8> {
    fs::read(dir.join(name)).unwrap()
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_sweep_to_dir(&spec(3), a.path(), RunControl::default()).unwrap();
    run_sweep_to_dir(&spec(3), b.path(), RunControl::default()).unwrap();
    assert_eq!(read(a.path(), RESULTS_FILE), read(b.path(), RESULTS_FILE));
    assert_eq!(read(a.path(), SUMMARY_FILE), read(b.path(), SUMMARY_FILE));
}

#[test]
fn one_and_four_workers_agree() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let s1 = run_sweep_to_dir(&spec(1), a.path(), RunControl::default()).unwrap();
    let s4 = run_sweep_to_dir(&spec(4), b.path(), RunControl::default()).unwrap();
    assert_eq!(read(a.path(), RESULTS_FILE), read(b.path(), RESULTS_FILE));
    assert_eq!(s1.stats, s4.stats);
}

#[test]
fn resumed_run_matches_uninterrupted() {
    let full = tempfile::tempdir().unwrap();
    let part = tempfile::tempdir().unwrap();
    let s = spec(2);
    run_sweep_to_dir(&s, full.path(), RunControl::default()).unwrap();
    let first = run_sweep_to_dir(&s, part.path(), RunControl { limit: Some(130), ..RunControl::default() }).unwrap();
    assert!(!first.complete);
    let done = run_sweep_to_dir(&s, part.path(), RunControl { resume: true, ..RunControl::default() }).unwrap();
    assert!(done.complete);
    assert_eq!(read(full.path(), RESULTS_FILE), read(part.path(), RESULTS_FILE));
    assert_eq!(read(full.path(), SUMMARY_FILE), read(part.path(), SUMMARY_FILE));
}

#[test]
fn resume_rejects_other_spec() {
    let dir = tempfile::tempdir().unwrap();
    run_sweep_to_dir(&spec(2), dir.path(), RunControl { limit: Some(10), ..RunControl::default() }).unwrap();
    let mut other = spec(2);
    other.exponent_bound = 31;
    assert!(run_sweep_to_dir(&other, dir.path(), RunControl { resume: true, ..RunControl::default() }).is_err());
}

#[test]
fn trinomials_over_q5_stay_below_the_bound() {
    let s = SweepSpec {
        p: 5,
        t: 2,
        exponent_bound: 40,
        coeff_mode: CoeffMode::Random { seed: 3, count: 400, bound: 30 },
        prec: 24,
        depth: 6,
        workers: 4,
    };
    let r = run_sweep(&s).unwrap();
    assert_eq!(r.summary.upper_bound, Some(12));
    assert!(r.summary.stats.max_with_mult.unwrap().count <= 12);
}
