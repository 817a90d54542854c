//! Property checks shared by the unit-style property tests and the
//! acceptance harness. Each runs a seeded proptest runner for `cases` cases.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use qa_core::ambiguous::{hilbert_symbol_q, PlaceQ};
use qa_core::arith;
use qa_core::pell::{continued_fraction_sqrt, convergents, fundamental_unit};
use qa_core::quadfield::{sqrt_2adic, sqrt_mod_p};
use qa_core::quartic::{ideal_mul, ideal_norm, ideal_reduce_hnf, maximal_order, IntPoly, OrderBasis};

pub const TEST_PRIMES: [u64; 8] = [17, 41, 73, 97, 113, 65_537, 1_000_003, 2_147_483_647];

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn finish(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-100_000i64..-1, 1i64..100_000], 1i64..5_000)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Places where `(a, b)_v` can be −1: ∞, 2 and the primes dividing a or b.
fn relevant_places(a: &BigRational, b: &BigRational) -> Vec<PlaceQ> {
    let mut primes = vec![2u64];
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let n = x.abs().try_into().unwrap_or(0u64);
        primes.extend(arith::factor_u64(n).into_iter().map(|(q, _)| q));
    }
    primes.sort_unstable();
    primes.dedup();
    std::iter::once(PlaceQ::Infinity).chain(primes.into_iter().map(PlaceQ::Prime)).collect()
}

/// Product of `(a, b)_v` over all places is +1.
pub fn hilbert_product_formula(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(nonzero_rational(), nonzero_rational()), |(a, b)| {
        let mut product = 1i8;
        for v in relevant_places(&a, &b) {
            product *= hilbert_symbol_q(&a, &b, v).map_err(|e| TestCaseError::fail(e.to_string()))?;
        }
        prop_assert_eq!(product, 1, "a = {}, b = {}", a, b);
        Ok(())
    }))
}

/// `s = sqrt_mod_p(r² mod p)` satisfies `s² ≡ r²`, for every test prime.
pub fn tonelli_round_trip(cases: u32) -> Result<(), String> {
    for p in TEST_PRIMES {
        finish(runner(cases).run(&(1..p), |r| {
            let x = arith::mul_mod(r, r, p);
            let s = sqrt_mod_p(x, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(arith::mul_mod(s, s, p), x, "p = {}, r = {}", p, r);
            prop_assert!(s == r || s == p - r);
            Ok(())
        }))
        .map_err(|e| format!("p = {p}: {e}"))?;
    }
    Ok(())
}

/// `sqrt_2adic(p, k+1) ≡ sqrt_2adic(p, k) (mod 2^k)` and squares to `p`.
pub fn sqrt_2adic_consistency(cases: u32) -> Result<(), String> {
    let primes: Vec<u64> = arith::primes_up_to(20_000).into_iter().filter(|p| p % 8 == 1).collect();
    finish(runner(cases).run(&(proptest::sample::select(primes), 3u32..60), |(p, k)| {
        let s = sqrt_2adic(p, k).unwrap();
        let t = sqrt_2adic(p, k + 1).unwrap();
        let m = BigInt::from(1u8) << k;
        prop_assert_eq!(s.mod_floor(&m), t.mod_floor(&m));
        let m2 = BigInt::from(1u8) << (k + 2);
        prop_assert_eq!((&s * &s - BigInt::from(p)).mod_floor(&m2), BigInt::from(0));
        Ok(())
    }))
}

/// Convergent number `L − 1` of the period solves `x² − n y² = (−1)^L`,
/// and for primes `p ≡ 1 (mod 4)` it is the fundamental unit.
pub fn cf_convergent_round_trip(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(2u64..1_000_000), |n| {
        if arith::is_square_u64(n) {
            return Ok(());
        }
        let cf = continued_fraction_sqrt(n).unwrap();
        let len = cf.period.len();
        let (x, y) = convergents(&cf, len).pop().unwrap();
        let expected = if len.is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(&x * &x - BigInt::from(n) * &y * &y, BigInt::from(expected), "n = {}", n);
        if n % 4 == 1 && arith::is_prime_u64(n) {
            let u = fundamental_unit(n).unwrap();
            prop_assert_eq!((u.a, u.b), (x, y));
        }
        Ok(())
    }))
}

/// Fields used for random ideals.
pub fn test_orders() -> Vec<OrderBasis> {
    [[-41i64, 0, 0, 0, 1], [-17, 0, 0, 0, 1], [-1, 0, -8, 0, 1], [-2, 0, 0, 0, 1]]
        .iter()
        .map(|c| maximal_order(&IntPoly::from_i64(c).unwrap()).unwrap())
        .collect()
}

fn element() -> impl Strategy<Value = Vec<BigInt>> {
    proptest::collection::vec(-12i64..=12, 4).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

fn generators() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    proptest::collection::vec(element(), 1..=3)
        .prop_filter("nonzero generator", |gs| gs.iter().any(|g| g.iter().any(|c| c.sign() != num_bigint::Sign::NoSign)))
}

/// HNF of an ideal is a fixed point and independent of generator order.
pub fn hnf_canonical(cases: u32) -> Result<(), String> {
    let orders = test_orders();
    finish(runner(cases).run(&(0..orders.len(), generators(), any::<prop::sample::Index>()), |(k, gens, rot)| {
        let ob = &orders[k];
        let ideal = ideal_reduce_hnf(ob, &gens).unwrap();
        let again = ideal_reduce_hnf(ob, &ideal.hnf).unwrap();
        prop_assert_eq!(&again, &ideal);
        let mut permuted = gens.clone();
        permuted.rotate_left(rot.index(gens.len()));
        permuted.reverse();
        prop_assert_eq!(&ideal_reduce_hnf(ob, &permuted).unwrap(), &ideal);
        for g in &gens {
            prop_assert!(ideal.contains(g));
        }
        Ok(())
    }))
}

/// `N(IJ) = N(I) N(J)` and `N((α)) = |N(α)|`.
pub fn norm_multiplicativity(cases: u32) -> Result<(), String> {
    let orders = test_orders();
    finish(runner(cases).run(&(0..orders.len(), generators(), generators()), |(k, g1, g2)| {
        let ob = &orders[k];
        let a = ideal_reduce_hnf(ob, &g1).unwrap();
        let b = ideal_reduce_hnf(ob, &g2).unwrap();
        let ab = ideal_mul(&a, &b, ob);
        prop_assert_eq!(ideal_norm(&ab), ideal_norm(&a) * ideal_norm(&b));
        prop_assert_eq!(&ab, &ideal_mul(&b, &a, ob));
        if let Some(alpha) = g1.iter().find(|g| g.iter().any(|c| c.sign() != num_bigint::Sign::NoSign)) {
            let principal = ideal_reduce_hnf(ob, std::slice::from_ref(alpha)).unwrap();
            prop_assert_eq!(ideal_norm(&principal), ob.norm(alpha).abs());
        }
        Ok(())
    }))
}
