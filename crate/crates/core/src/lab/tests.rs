use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use super::scan::general_slice;
use super::*;
use crate::analytic::Enclosure;
use crate::eisenstein::{shift_poly, shifted_witness};
use crate::field::PrimeIdeal;

fn field(s: &str) -> NumberField {
    NumberField::from_str_poly(s).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn serial() -> ScanConfig {
    ScanConfig {
        threads: Some(1),
        ..ScanConfig::default()
    }
}

#[test]
fn witness_counts_over_q() {
    let k = field("x");
    let mut cache = SplitCache::new(&k);
    let (w, ws) = witness_count(&mut cache, &CoefficientTuple::rational(&[2, 2, 1]), Flavor::Plain).unwrap();
    assert_eq!(w, 1);
    assert_eq!(ws[0].prime.p(), 2);
    let (w, ws) = witness_count(&mut cache, &CoefficientTuple::rational(&[6, 6, 1]), Flavor::Plain).unwrap();
    assert_eq!(w, 2);
    let mut ps: Vec<u64> = ws.iter().map(|w| w.prime.p()).collect();
    ps.sort();
    assert_eq!(ps, [2, 3]);
    let f = CoefficientTuple::rational(&[1, 0, 1]);
    assert_eq!(witness_count(&mut cache, &f, Flavor::Plain).unwrap().0, 0);
    let (w, ws) = witness_count(&mut cache, &f, Flavor::Shifted).unwrap();
    assert_eq!(w, 1);
    assert_eq!(ws[0].prime.p(), 2);
    let b = ws[0].shift.clone().unwrap();
    assert!(is_p_eisenstein(&shift_poly(&k, &f, &b), &ws[0].prime));
}

#[test]
fn smallest_box_has_no_eisenstein_polynomials() {
    let k = field("x");
    let r = exhaustive_scan(&BoxSpec::new(&k, 1, 2).unwrap(), Flavor::Plain, 2, &serial()).unwrap();
    assert_eq!(r.total(), 8);
    assert_eq!(r.in_target(), 0);
    assert_eq!(r.quantity("density").unwrap().value, Some(BigRational::zero()));
    assert_eq!(r.quantity("restricted_mean").unwrap().value, None);
}

/// Eisenstein over Q checked directly on integers.
fn rational_witnesses(a: &[i64]) -> usize {
    let d = a.len() - 1;
    [2i64, 3, 5, 7, 11, 13]
        .iter()
        .filter(|&&p| {
            a[0] != 0
                && a[0] % p == 0
                && a[0] % (p * p) != 0
                && a[1..d].iter().all(|x| x % p == 0)
                && a[d] % p != 0
        })
        .count()
}

#[test]
fn box_of_width_four_matches_brute_force() {
    let k = field("x");
    let mut expect = WitnessHistogram::new();
    for a0 in -2..2 {
        for a1 in -2..2 {
            for a2 in -2..2 {
                expect.add(rational_witnesses(&[a0, a1, a2]), 1);
            }
        }
    }
    let r = exhaustive_scan(&BoxSpec::new(&k, 2, 2).unwrap(), Flavor::Plain, 2, &serial()).unwrap();
    assert_eq!(r.histogram, expect);
    // a_0 = -2 with a_1 even and a_2 odd: 1 * 2 * 2 tuples.
    assert_eq!(r.in_target(), 4);
    assert_eq!(r.quantity("density").unwrap().value, Some(q(4, 64)));
}

fn naive_histogram(b: &BoxSpec<'_>, flavor: Flavor) -> WitnessHistogram {
    let elements: Vec<Vec<i64>> = (0..b.elements().unwrap()).map(|i| b.element(i)).collect();
    let mut cache = SplitCache::new(b.field());
    let mut hist = WitnessHistogram::new();
    for i in 0..elements.len() {
        hist.merge(&general_slice(b, &mut cache, &elements, i, flavor).unwrap());
    }
    hist
}

#[test]
fn grouped_plain_scan_matches_tuple_iteration() {
    for (poly, h, d) in [("x", 6, 2), ("x", 3, 3), ("x^2+1", 3, 2), ("x^2-2", 2, 2)] {
        let k = field(poly);
        let b = BoxSpec::new(&k, h, d).unwrap();
        let fast = exhaustive_scan(&b, Flavor::Plain, 2, &ScanConfig::default()).unwrap();
        assert_eq!(fast.histogram, naive_histogram(&b, Flavor::Plain), "{poly} H={h} d={d}");
    }
}

/// Tuples in the box that are P-Eisenstein, from per-coefficient residue counts.
fn per_prime_count(b: &BoxSpec<'_>, p: &PrimeIdeal) -> u128 {
    let (mut inside, mut simple) = (0u128, 0u128);
    let sq = p.cached_power(2).unwrap();
    for i in 0..b.elements().unwrap() {
        let x = b.element(i);
        if p.contains_i64(&x) {
            inside += 1;
            if !sq.contains_i64(&x) {
                simple += 1;
            }
        }
    }
    let outside = b.elements().unwrap() - inside;
    simple * inside.pow(b.d() as u32 - 1) * outside
}

#[test]
fn witness_sum_equals_sum_of_per_prime_counts() {
    for (poly, h, d) in [("x", 7, 2), ("x", 4, 3), ("x^2+1", 3, 2), ("x^2-x-1", 3, 2)] {
        let k = field(poly);
        let b = BoxSpec::new(&k, h, d).unwrap();
        let r = exhaustive_scan(&b, Flavor::Plain, 1, &serial()).unwrap();
        // Above every norm of a box element for these fields.
        let bound = 8 * h * h + 1;
        let per_prime: u128 = k.primes_up_to(bound).unwrap().iter().map(|p| per_prime_count(&b, p)).sum();
        assert_eq!(r.histogram.power_sum(1), BigInt::from(per_prime), "{poly}");
    }
}

#[test]
fn per_prime_fraction_is_exact_on_full_residue_boxes() {
    let k = field("x");
    for p in [2u64, 3] {
        let prime = k.split_prime(p).unwrap().remove(0);
        for d in 2..=3usize {
            for j in 0..3 {
                let h = p * p * (1 << j);
                let b = BoxSpec::new(&k, h, d).unwrap();
                let got = BigRational::new(per_prime_count(&b, &prime).into(), b.total().unwrap().into());
                let p = p as i64;
                assert_eq!(got, q((p - 1) * (p - 1), p.pow(d as u32 + 2)));
            }
        }
    }
}

#[test]
fn monte_carlo_is_independent_of_thread_count() {
    let k = field("x^2+1");
    let b = BoxSpec::new(&k, 20, 2).unwrap();
    for (flavor, samples) in [(Flavor::Plain, 3 * MC_CHUNK + 17), (Flavor::Shifted, MC_CHUNK + 5)] {
        let runs: Vec<WitnessHistogram> = [1, 3, 8]
            .iter()
            .map(|&t| {
                let cfg = ScanConfig { threads: Some(t), ..ScanConfig::default() };
                monte_carlo_scan(&b, flavor, samples, 7, 2, &cfg).unwrap().histogram
            })
            .collect();
        assert_eq!(runs[0].total(), samples as u128);
        assert!(runs.iter().all(|r| r == &runs[0]));
    }
    let other = monte_carlo_scan(&b, Flavor::Plain, 3 * MC_CHUNK + 17, 8, 2, &serial()).unwrap();
    let first = monte_carlo_scan(&b, Flavor::Plain, 3 * MC_CHUNK + 17, 7, 2, &serial()).unwrap();
    assert_ne!(other.histogram, first.histogram);
}

#[test]
fn ten_samples_are_reproducible() {
    let k = field("x");
    let b = BoxSpec::new(&k, 100, 3).unwrap();
    let a = monte_carlo_scan(&b, Flavor::Plain, 10, 1, 2, &ScanConfig::default()).unwrap();
    let c = monte_carlo_scan(&b, Flavor::Plain, 10, 1, 2, &ScanConfig::default()).unwrap();
    assert_eq!(a.histogram, c.histogram);
    assert_eq!(a.quantities(), c.quantities());
}

#[test]
fn monte_carlo_agrees_with_exhaustive() {
    let k = field("x");
    let b = BoxSpec::new(&k, 8, 2).unwrap();
    let exact = exhaustive_scan(&b, Flavor::Plain, 2, &ScanConfig::default()).unwrap();
    let mc = monte_carlo_scan(&b, Flavor::Plain, 200_000, 11, 2, &ScanConfig::default()).unwrap();
    for name in ["density", "mean", "moment_2"] {
        let e = exact.quantity(name).unwrap().value.unwrap();
        let m = mc.quantity(name).unwrap();
        let se = m.standard_error.unwrap();
        let diff = (e - m.value.unwrap()).abs();
        assert!(diff <= BigRational::from_float(4.0 * se).unwrap(), "{name}: {diff} vs se {se}");
    }
    assert!(exact.quantity("density").unwrap().standard_error.is_none());
}

#[test]
fn shifted_density_exceeds_plain() {
    let k = field("x");
    let b = BoxSpec::new(&k, 50, 2).unwrap();
    let plain = monte_carlo_scan(&b, Flavor::Plain, 20_000, 3, 1, &ScanConfig::default()).unwrap();
    let shifted = monte_carlo_scan(&b, Flavor::Shifted, 20_000, 3, 1, &ScanConfig::default()).unwrap();
    assert!(shifted.in_target() > plain.in_target());
}

#[test]
fn shifted_scan_matches_tuple_iteration() {
    let k = field("x");
    let b = BoxSpec::new(&k, 3, 2).unwrap();
    let r = exhaustive_scan(&b, Flavor::Shifted, 2, &ScanConfig::default()).unwrap();
    assert_eq!(r.histogram, naive_histogram(&b, Flavor::Shifted));
    let plain = exhaustive_scan(&b, Flavor::Plain, 2, &ScanConfig::default()).unwrap();
    assert!(r.in_target() >= plain.in_target());
}

#[test]
fn budget_is_enforced() {
    let k = field("x");
    let b = BoxSpec::new(&k, 1000, 3).unwrap();
    let cfg = ScanConfig { threads: None, budget: 1000 };
    assert!(matches!(exhaustive_scan(&b, Flavor::Plain, 2, &cfg), Err(Error::BudgetExceeded { .. })));
    assert!(matches!(
        monte_carlo_scan(&b, Flavor::Plain, 0, 1, 2, &cfg),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn shifted_count_is_invariant_mod_p_squared() {
    let k = field("x");
    for p in [2i64, 3] {
        let prime = k.split_prime(p as u64).unwrap().remove(0);
        let m = p * p;
        let residues: Vec<[i64; 3]> = (0..m.pow(3)).map(|i| [i % m, i / m % m, i / (m * m)]).collect();
        let hit = |a: &[i64]| shifted_witness(&k, &CoefficientTuple::rational(a), &prime).is_some();
        let count = residues.iter().filter(|a| hit(&a[..])).count();
        assert!(count > 0);
        for b in 0..m {
            let bb = k.from_int(b);
            let shifted = residues
                .iter()
                .filter(|a| {
                    let g = shift_poly(&k, &CoefficientTuple::rational(&a[..]), &bb);
                    let red: Vec<i64> = g
                        .coeffs()
                        .iter()
                        .map(|c| {
                            let v: i64 = (&c.coords()[0] % BigInt::from(m)).try_into().unwrap();
                            v.rem_euclid(m)
                        })
                        .collect();
                    hit(&red)
                })
                .count();
            assert_eq!(shifted, count, "p={p} b={b}");
        }
    }
}

#[test]
fn comparison_verdicts() {
    let k = field("x");
    let b = BoxSpec::new(&k, 1, 2).unwrap();
    let mut r = exhaustive_scan(&b, Flavor::Plain, 1, &serial()).unwrap();
    r.histogram = WitnessHistogram { counts: vec![1, 1] };
    let half = Enclosure::point(q(1, 2));
    let v = compare(&[("density".into(), Some(half))], &r, 0.0);
    assert!(v.passed());
    let narrow = Enclosure::new(q(1, 10), q(11, 100));
    let v = compare(&[("density".into(), Some(narrow)), ("unknown".into(), None)], &r, 0.01);
    assert!(!v.passed());
    assert_eq!(v.rows.len(), 1);
    assert_eq!(v.rows[0].status, RowStatus::Fail);
    assert!((v.rows[0].delta.unwrap() - 0.395).abs() < 1e-12);
    let v = compare(&[("restricted_mean".into(), None)], &r, 0.01);
    assert_eq!(v.rows[0].status, RowStatus::Fail);
    r.histogram = WitnessHistogram { counts: vec![2] };
    let v = compare(&[("restricted_mean".into(), None)], &r, 0.01);
    assert_eq!(v.rows[0].status, RowStatus::Undefined);
    assert!(v.passed());
}

#[test]
fn sampled_comparison_needs_slack() {
    let k = field("x");
    let b = BoxSpec::new(&k, 8, 2).unwrap();
    let exact = exhaustive_scan(&b, Flavor::Plain, 1, &serial()).unwrap();
    let mc = monte_carlo_scan(&b, Flavor::Plain, 5_000, 2, 1, &serial()).unwrap();
    let truth = Enclosure::point(exact.quantity("density").unwrap().value.unwrap());
    let with_se = compare(&[("density".into(), Some(truth.clone()))], &mc, 0.0);
    assert!(with_se.passed());
    let mut as_exact = mc.clone();
    as_exact.mode = ScanMode::Exhaustive;
    let bare = compare(&[("density".into(), Some(truth))], &as_exact, 0.0);
    assert!(!bare.passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sample_moments_satisfy_cauchy_schwarz(seed in any::<u64>(), h in 2u64..40) {
        let k = field("x");
        let b = BoxSpec::new(&k, h, 2).unwrap();
        let r = monte_carlo_scan(&b, Flavor::Plain, 300, seed, 2, &serial()).unwrap();
        let n = BigInt::from(r.total());
        let s1 = r.histogram.power_sum(1);
        let s2 = r.histogram.power_sum(2);
        prop_assert!(&s2 * &n >= &s1 * &s1);
        prop_assert!(r.in_target() <= r.total());
        if let Some(v) = r.quantity("variance").unwrap().value {
            prop_assert!(v >= BigRational::zero());
        }
        let mean = r.quantity("mean").unwrap().value.unwrap();
        prop_assert!(mean <= BigRational::one() * BigRational::from_integer(3.into()));
    }
}
