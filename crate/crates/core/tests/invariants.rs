use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use padroot::bounds::{d_t, lower_bound, new_upper_bound, vp_d_t, FieldParams};
use padroot::padic::{hensel_lift, teichmuller};
use padroot::rootcount::Certificate;
use padroot::{count_roots, newton_polygon, CountOptions, PadicNum, SparsePoly, Valuation};
use proptest::prelude::*;

fn primes() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

/// Sparse integer polynomials with 2 to 4 terms.
fn sparse(max_exp: u64) -> impl Strategy<Value = Vec<(u64, i64)>> {
    prop::collection::btree_map(0..=max_exp, (-30i64..=30).prop_filter("nonzero", |c| *c != 0), 2..=4)
        .prop_map(|m| m.into_iter().collect())
}

fn modpow(b: &BigInt, e: u64, m: &BigInt) -> BigInt {
    b.modpow(&BigInt::from(e), m)
}

fn reduce(a: &BigInt, m: &BigInt) -> BigInt {
    ((a % m) + m) % m
}

/// `f(x) mod m` for an integer polynomial, written out directly.
fn eval_int(terms: &[(u64, i64)], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for &(e, c) in terms {
        acc += BigInt::from(c) * modpow(x, e, m);
    }
    reduce(&acc, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn newton_slopes_increase(terms in sparse(40), p in primes()) {
        let f = SparsePoly::from_ints(&terms);
        let np = newton_polygon(&f, p);
        prop_assert!(np.segments.len() <= terms.len() - 1);
        for w in np.segments.windows(2) {
            prop_assert!(w[0].slope < w[1].slope);
        }
    }

    #[test]
    fn scaling_shifts_slopes(terms in sparse(30), p in primes(), m in -3i64..=3) {
        let f = SparsePoly::from_ints(&terms);
        let before = newton_polygon(&f, p);
        let after = newton_polygon(&f.scale_substitute(p, m), p);
        prop_assert_eq!(before.segments.len(), after.segments.len());
        for (a, b) in before.segments.iter().zip(&after.segments) {
            prop_assert_eq!(a.length, b.length);
            prop_assert_eq!(b.slope, a.slope + Rational64::from_integer(m));
        }
    }

    #[test]
    fn taylor_shift_matches_evaluation(terms in sparse(20), p in primes(), r in 0i64..500, y in 0i64..500) {
        let f = SparsePoly::from_ints(&terms);
        let n = 8u32;
        let m = BigInt::from(p).pow(n);
        let rp = PadicNum::from_residue(&BigInt::from(r), p, n);
        let h = f.taylor_shift_truncate(&rp, p, n).unwrap();
        let yb = BigInt::from(y);
        let mut lhs = BigInt::zero();
        for (k, c) in h.iter().enumerate() {
            lhs += c * modpow(&yb, k as u64, &m);
        }
        let x = BigInt::from(r) + BigInt::from(p) * &yb;
        prop_assert_eq!(reduce(&lhs, &m), eval_int(&terms, &x, &m));
    }

    #[test]
    fn torsion_reduction_agrees_on_roots_of_unity(terms in sparse(60), p in primes()) {
        let f = SparsePoly::from_ints(&terms);
        let g = f.reduce_exponents_torsion(p);
        let n = 12u32;
        let m = BigInt::from(p).pow(n);
        for a in 1..p {
            let xi = teichmuller(p, a, n).integral_rep(n).unwrap();
            prop_assert_eq!(f.eval_mod(&xi, &m), g.eval_mod(&xi, &m));
        }
    }

    #[test]
    fn roots_sit_on_segments(terms in sparse(40), p in primes()) {
        let f = SparsePoly::from_ints(&terms);
        let r = count_roots(&f, p, &CountOptions::default()).unwrap();
        let np = newton_polygon(&f, p);
        for e in &r.entries {
            let hits = np.segments.iter().filter(|s| s.slope == Rational64::from_integer(-e.valuation)).count();
            prop_assert_eq!(hits, 1);
        }
        prop_assert!(r.totals.count_with_multiplicity <= r.totals.upper_bound_with_multiplicity);
        prop_assert!(r.totals.count_distinct <= r.totals.count_with_multiplicity);
    }

    #[test]
    fn roots_vanish(terms in sparse(40), p in primes()) {
        let f = SparsePoly::from_ints(&terms);
        let r = count_roots(&f, p, &CountOptions::default()).unwrap();
        for e in r.entries.iter().filter(|e| e.valuation >= 0) {
            let n = 10u32;
            let m = BigInt::from(p).pow(n);
            let x = e.value.integral_rep(n).unwrap();
            prop_assert!(f.eval_mod(&x, &m).unwrap().is_zero(), "{} at {}", f, e.value);
        }
    }

    #[test]
    fn torsion_closure(raw in prop::collection::btree_map(0u64..=8, (-12i64..=12).prop_filter("nonzero", |c| *c != 0), 2..=3), p in primes()) {
        // every exponent divisible by p - 1, so f(ξx) = f(x) for ξ^(p-1) = 1
        let terms: Vec<(u64, i64)> = raw.into_iter().map(|(e, c)| (e * (p - 1), c)).collect();
        let f = SparsePoly::from_ints(&terms);
        let r = count_roots(&f, p, &CountOptions::default()).unwrap();
        prop_assume!(r.is_certified());
        let n = 8u32;
        let key = |x: &PadicNum| (x.valuation(), x.unit().map(|u| reduce(u, &BigInt::from(p).pow(n))));
        let found: Vec<_> = r.entries.iter().map(|e| (key(&e.value), e.multiplicity)).collect();
        for e in r.entries.iter().filter(|e| e.certificate == Certificate::ExactTorsion) {
            for a in 1..p {
                let moved = e.value.mul(&teichmuller(p, a, 40));
                prop_assert!(found.contains(&(key(&moved), e.multiplicity)));
            }
        }
        prop_assert_eq!(r.entries.len() as u64 % (p - 1), 0);
    }

    #[test]
    fn hensel_keeps_derivative_valuation(p in primes(), s in 0u32..=2, k0 in 1u64..6, a in 1i64..50, j in 1u32..4, u in 1i64..20) {
        prop_assume!(a % p as i64 != 0 && k0 % p != 0);
        let k = k0 * p.pow(s);
        let target = 30u32;
        let m = BigInt::from(p).pow(target + 10);
        // f = x^k − (a^k + p^(2s+j) u): a is an approximate root with v(f'(a)) = s
        let c = modpow(&BigInt::from(a), k, &m) + BigInt::from(p).pow(2 * s + j) * u;
        let f = SparsePoly::new(vec![
            (0, BigRational::from_integer(-c)),
            (k, BigRational::one()),
        ]).unwrap();
        let r0 = PadicNum::from_residue(&BigInt::from(a), p, target);
        let (root, cert) = hensel_lift(&f, &r0, target).unwrap();
        prop_assert_eq!(cert.val_fprime_r0, i64::from(s));
        let mt = BigInt::from(p).pow(target);
        let x = root.integral_rep(target).unwrap();
        prop_assert!(f.eval_mod(&x, &mt).unwrap().is_zero());
        let dval = padroot::arith::val_int(&f.derivative().eval_mod(&x, &mt).unwrap(), p);
        prop_assert_eq!(dval, u64::from(s));
    }
}

#[test]
fn teichmuller_points_are_distinct_units_of_order_dividing_p_minus_1() {
    for p in [3u64, 5, 7, 11, 13] {
        for n in [1u32, 5, 20] {
            let m = BigInt::from(p).pow(n);
            let reps: Vec<BigInt> = (1..p).map(|a| teichmuller(p, a, n).integral_rep(n).unwrap()).collect();
            for (a, x) in reps.iter().enumerate() {
                assert!(modpow(x, p - 1, &m).is_one());
                assert_eq!(reduce(x, &BigInt::from(p)), BigInt::from(a as u64 + 1));
            }
        }
    }
}

#[test]
fn d_t_divisibility_and_monotone_valuation() {
    for t in 0..=5u64 {
        for m in 0..=24u64 {
            let a = d_t(t, m).unwrap();
            assert!((d_t(t, m + 1).unwrap() % &a).is_zero(), "d_{t}({m}) | d_{t}({})", m + 1);
            assert!((d_t(t + 1, m).unwrap() % &a).is_zero(), "d_{t}({m}) | d_{}({m})", t + 1);
            if m > 0 && t > 0 {
                for p in [2u64, 3, 5, 7] {
                    assert!(vp_d_t(p, t, m) >= vp_d_t(p, t, m - 1));
                }
            }
        }
    }
}

#[test]
fn upper_bound_dominates_lower_bound() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
        for t in 1..=5u64 {
            let params = FieldParams::new(p, 1, 1);
            if p <= t + 1 {
                assert!(new_upper_bound(t, &params).is_err());
                continue;
            }
            let up = new_upper_bound(t, &params).unwrap();
            let low = lower_bound(t, &BigInt::from(p)).unwrap();
            assert!(up >= low.value && low.value >= low.regular);
        }
    }
}

#[test]
fn valuation_of_certified_simple_roots_is_finite() {
    let f = SparsePoly::from_ints(&[(0, 9), (2, -10), (20, 1)]);
    let r = count_roots(&f, 3, &CountOptions::default()).unwrap();
    assert!(r.entries.iter().all(|e| matches!(e.value.valuation(), Valuation::Finite(_))));
}
