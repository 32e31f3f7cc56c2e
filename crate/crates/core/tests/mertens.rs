mod common;

use approx::assert_relative_eq;
use constel_core::constants::half_e_gamma;
use constel_core::mertens::{
    dependency_ratio, heuristic_density, mertens_product, mertens_theorem_check,
};
use constel_core::{Error, PrimeTable};

#[test]
fn product_matches_exact_rationals_at_small_bounds() {
    let t = PrimeTable::build(100).unwrap();
    // empty product
    assert_eq!(mertens_product(&t, 0).unwrap(), 1.0);
    assert_eq!(mertens_product(&t, 1).unwrap(), 1.0);
    // (1/2)
    assert_relative_eq!(mertens_product(&t, 2).unwrap(), 0.5, max_relative = 1e-15);
    // (1/2)(2/3)(4/5)(6/7) = 8/35
    assert_relative_eq!(
        mertens_product(&t, 10).unwrap(),
        8.0 / 35.0,
        max_relative = 1e-14
    );
    // bound between primes includes only those below it
    assert_eq!(
        mertens_product(&t, 10).unwrap(),
        mertens_product(&t, 8).unwrap()
    );
}

#[test]
fn product_against_an_independent_rational_accumulation() {
    let t = PrimeTable::build(10_000).unwrap();
    let mut direct = 1.0;
    for p in common::trial_primes_up_to(10_000) {
        direct *= (p - 1) as f64 / p as f64;
    }
    assert_relative_eq!(
        mertens_product(&t, 10_000).unwrap(),
        direct,
        max_relative = 1e-12
    );
}

#[test]
fn product_at_one_million() {
    let t = PrimeTable::build(1_000_000).unwrap();
    assert_relative_eq!(
        mertens_product(&t, 1_000_000).unwrap(),
        0.040638210171648384,
        max_relative = 1e-13
    );
}

#[test]
fn product_is_strictly_decreasing_across_primes() {
    let t = PrimeTable::build(200).unwrap();
    let mut prev = mertens_product(&t, 1).unwrap();
    for y in 2..=200 {
        let v = mertens_product(&t, y).unwrap();
        assert!(v <= prev, "y = {y}");
        if common::trial_is_prime(y) {
            assert!(v < prev, "y = {y} is prime, the product must drop");
        }
        prev = v;
    }
}

#[test]
fn density_basics() {
    assert_relative_eq!(
        heuristic_density(100.0).unwrap(),
        1.0 / 100f64.ln(),
        max_relative = 1e-15
    );
    assert!(matches!(heuristic_density(1.0), Err(Error::Domain(_))));
    assert!(matches!(heuristic_density(0.0), Err(Error::Domain(_))));
    assert!(matches!(heuristic_density(-3.0), Err(Error::Domain(_))));
}

#[test]
fn dependency_ratio_known_values() {
    let t = PrimeTable::build(1_000_000).unwrap();
    // sqrt(4) = 2, so the ratio is (1/ln 4)/(1/2) = 1/ln 2
    assert_relative_eq!(
        dependency_ratio(&t, 4).unwrap(),
        1.4426950408889634,
        max_relative = 1e-15
    );
    assert_relative_eq!(
        dependency_ratio(&t, 100).unwrap(),
        0.9500191791633632,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        dependency_ratio(&t, 10_000).unwrap(),
        0.9023941616972438,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        dependency_ratio(&t, 1_000_000).unwrap(),
        0.8939934302125124,
        max_relative = 1e-12
    );
    // the sieve covers sqrt(1e12) = 1e6, so trillion-scale ratios are fine
    assert_relative_eq!(
        dependency_ratio(&t, 1_000_000_000_000).unwrap(),
        0.8905708856863019,
        max_relative = 1e-12
    );
}

#[test]
fn dependency_ratio_approaches_half_e_gamma_from_above() {
    let t = PrimeTable::build(1_000_000).unwrap();
    let limit = half_e_gamma();
    // consecutive powers of ten can wobble (the Mertens product
    // oscillates: 1e8 sits above 1e7), but the even-power ladder
    // decreases strictly and the ratio stays above the limit
    let mut prev = f64::INFINITY;
    for exp in [2u32, 4, 6, 8, 10, 12] {
        let x = 10u64.pow(exp);
        let ratio = dependency_ratio(&t, x).unwrap();
        assert!(ratio > limit, "x = 1e{exp}");
        let err = ratio - limit;
        assert!(err < prev, "x = 1e{exp}: {err} vs {prev}");
        prev = err;
    }
    assert!(prev < 1e-4);
}

#[test]
fn dependency_ratio_domain_and_range_errors() {
    let t = PrimeTable::build(100).unwrap();
    assert!(matches!(dependency_ratio(&t, 3), Err(Error::Domain(_))));
    // sqrt(10^6) = 1000 outruns a table built to 100
    assert!(matches!(
        dependency_ratio(&t, 1_000_000),
        Err(Error::Range(_))
    ));
}

#[test]
fn theorem_check_known_values() {
    let t = PrimeTable::build(1_000_000).unwrap();
    assert_relative_eq!(
        mertens_theorem_check(&t, 285).unwrap(),
        0.9845233694088602,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        mertens_theorem_check(&t, 1_000).unwrap(),
        0.996132833754056,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        mertens_theorem_check(&t, 10_000).unwrap(),
        0.9987697373973727,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        mertens_theorem_check(&t, 100_000).unwrap(),
        0.9996958388747037,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        mertens_theorem_check(&t, 1_000_000).unwrap(),
        0.9999610624019264,
        max_relative = 1e-13
    );
}

#[test]
fn theorem_check_stays_inside_the_classical_envelope() {
    let t = PrimeTable::build(1_000_000).unwrap();
    for y in [285u64, 500, 1_000, 33_333, 1_000_000] {
        let check = mertens_theorem_check(&t, y).unwrap();
        let envelope = 1.0 / (2.0 * (y as f64).ln().powi(2));
        assert!(
            (check - 1.0).abs() < envelope,
            "y = {y}: |{check} - 1| vs {envelope}"
        );
    }
}

#[test]
fn theorem_check_rejects_small_bounds() {
    let t = PrimeTable::build(1_000).unwrap();
    assert!(matches!(
        mertens_theorem_check(&t, 284),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        mertens_theorem_check(&t, 2),
        Err(Error::Domain(_))
    ));
    assert!(mertens_theorem_check(&t, 285).is_ok());
}
