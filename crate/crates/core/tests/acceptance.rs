//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Ranges and tolerances are the stated ones (exact).

mod common;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use qa_core::ambiguous::{class_number_mod4_chain, genus_ambiguous_count, odd_class_number_chain, Conclusion};
use qa_core::bqf::{ambiguous_classes, is_fundamental_discriminant, is_h_odd};
use qa_core::pell::{check_unit_congruences, fundamental_unit, FactorVerdict};
use qa_core::quadfield::{
    legendre, local_residue_at_2, order_mod_p, quad_ramified_places, residue_mod_sqrtp, sqrt_mod_p, PlaceK, QuadInt,
};
use qa_core::quartic::{
    class_group, maximal_order, quartic_h_mod4, Certification, Fixtures, IntPoly, DEEP_PRIMES_1_MOD_16,
    DEEP_PRIMES_9_MOD_16, DEFAULT_DEEP_BOUND,
};
use qa_core::verifier::scan_primes;
use qa_core::Result;

const BIG: u64 = 100_000;

type Outcome = std::result::Result<String, String>;
type Suite = (&'static str, fn(u32) -> std::result::Result<(), String>);
type Criterion = (&'static str, fn() -> Outcome);

/// Runs `check` on every prime, collecting the first few failures.
fn over_primes(primes: &[u64], check: impl Fn(u64) -> Result<Option<String>> + Sync) -> Outcome {
    let mut bad: Vec<String> = primes
        .par_iter()
        .filter_map(|&p| match check(p) {
            Ok(None) => None,
            Ok(Some(why)) => Some(format!("p={p}: {why}")),
            Err(e) => Some(format!("p={p}: {e}")),
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{} primes", primes.len()))
    } else {
        let n = bad.len();
        bad.truncate(5);
        Err(format!("{n} failures, e.g. {}", bad.join("; ")))
    }
}

fn primes_mod(m: u64, r: u64, hi: u64) -> Vec<u64> {
    scan_primes(2, hi, None).unwrap().into_iter().filter(|p| p % m == r).collect()
}

fn criterion_1() -> Outcome {
    let units = over_primes(&primes_mod(4, 1, BIG), |p| {
        let u = fundamental_unit(p)?;
        Ok((u.norm() != BigInt::from(-1)).then(|| format!("a²−pb² = {}", u.norm())))
    })?;
    let odd = over_primes(&primes_mod(4, 1, 10_000), |p| Ok((!is_h_odd(p)?).then(|| "h even".into())))?;
    Ok(format!("norm −1: {units} ≤ 10⁵; h odd: {odd} ≤ 10⁴"))
}

fn criterion_2() -> Outcome {
    let inconclusive = AtomicUsize::new(0);
    let res = over_primes(&primes_mod(8, 1, BIG), |p| {
        let u = fundamental_unit(p)?;
        let c = check_unit_congruences(&u)?;
        let small_ok = c.b_small_factors.iter().all(|(q, _)| q % 4 == 1);
        if !(c.four_divides_a && c.b_one_mod_four && small_ok && c.b_prime_factors != FactorVerdict::Fail) {
            return Ok(Some(format!("congruences {c:?}")));
        }
        if c.b_prime_factors == FactorVerdict::Inconclusive {
            inconclusive.fetch_add(1, Ordering::Relaxed);
        }
        let eps_root = QuadInt::from_unit(&u).mul(&QuadInt::sqrt_p(p));
        let ram = quad_ramified_places(&eps_root)?;
        Ok((ram != [PlaceK::SqrtP]).then(|| format!("ramified in k(√(ε√p)): {ram:?}")))
    })?;
    Ok(format!("{res}; composite cofactor of b left unfactored at the 10⁷ cap: {}", inconclusive.into_inner()))
}

fn criterion_3() -> Outcome {
    over_primes(&primes_mod(8, 1, BIG), |p| {
        let eps = QuadInt::from_unit(&fundamental_unit(p)?);
        let mut res = [local_residue_at_2(&eps, PlaceK::DyadicPlus)?, local_residue_at_2(&eps, PlaceK::DyadicMinus)?];
        res.sort_unstable();
        if res != [1, 3] {
            return Ok(Some(format!("dyadic residues of ε {res:?}")));
        }
        let eps_root = eps.mul(&QuadInt::sqrt_p(p));
        let res2 = [local_residue_at_2(&eps_root, PlaceK::DyadicPlus)?, local_residue_at_2(&eps_root, PlaceK::DyadicMinus)?];
        if res2 != [1, 1] {
            return Ok(Some(format!("dyadic residues of ε√p {res2:?}")));
        }
        let ram = quad_ramified_places(&eps)?;
        let shape = ram.len() == 2
            && ram.iter().filter(|v| v.is_real()).count() == 1
            && ram.iter().filter(|v| matches!(v, PlaceK::DyadicPlus | PlaceK::DyadicMinus)).count() == 1;
        if !shape {
            return Ok(Some(format!("ramified in k(√ε): {ram:?}")));
        }
        let a = residue_mod_sqrtp(&eps);
        let (ord, leg) = (order_mod_p(a, p)?, legendre(a, p));
        Ok((ord != 4 || leg != 1).then(|| format!("a={a} order {ord} legendre {leg}")))
    })
}

fn criterion_4() -> Outcome {
    let nine = over_primes(&primes_mod(16, 9, BIG), |p| {
        let a = residue_mod_sqrtp(&QuadInt::from_unit(&fundamental_unit(p)?));
        let s = sqrt_mod_p(a, p)?;
        let (ord, leg) = (order_mod_p(s, p)?, legendre(s, p));
        let chain = class_number_mod4_chain(p)?;
        Ok((ord != 8 || leg != -1 || chain.conclusion != Conclusion::Pass)
            .then(|| format!("√ε ↦ {s}: order {ord} legendre {leg}, chain {}", chain.conclusion)))
    })?;
    let one = over_primes(&primes_mod(16, 1, BIG), |p| {
        let a = residue_mod_sqrtp(&QuadInt::from_unit(&fundamental_unit(p)?));
        let s = sqrt_mod_p(a, p)?;
        let leg = legendre(s, p);
        let chain = class_number_mod4_chain(p)?;
        let step_fails = chain.step("j_even").is_some_and(|st| !st.pass);
        Ok((leg != 1 || !step_fails || chain.conclusion != Conclusion::HypothesisNotMet)
            .then(|| format!("√ε ↦ {s}: legendre {leg}, j_even step fails {step_fails}, chain {}", chain.conclusion)))
    })?;
    Ok(format!("9 mod 16: {nine} pass; 1 mod 16: {one} residue, chain hypothesis_not_met"))
}

fn criterion_5() -> Outcome {
    let ds: Vec<i64> = (-500..=500).filter(|&d| is_fundamental_discriminant(d)).collect();
    let mut bad = Vec::new();
    for &d in &ds {
        match (ambiguous_classes(d), genus_ambiguous_count(d)) {
            (Ok(x), Ok(y)) if x == y => {}
            (x, y) => bad.push(format!("D={d}: forms {x:?} formula {y:?}")),
        }
    }
    if bad.is_empty() {
        Ok(format!("{} fundamental discriminants", ds.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_6() -> Outcome {
    over_primes(&primes_mod(8, 1, BIG), |p| {
        let v = odd_class_number_chain(p)?;
        Ok((v.conclusion != Conclusion::Pass || v.j() != Some(2)).then(|| format!("{} j={:?}", v.conclusion, v.j())))
    })
}

/// `x⁴ − 2a x² − 1`, the minimal polynomial of `√ε` for `ε = a + b√p`.
fn unit_extension_poly(p: u64) -> Result<IntPoly> {
    let u = fundamental_unit(p)?;
    let n = u.norm();
    IntPoly::new(vec![n, BigInt::from(0), -BigInt::from(2) * &u.a, BigInt::from(0), BigInt::from(1)])
}

fn criterion_7() -> Outcome {
    let fixtures = Fixtures::builtin();
    let mut lines = Vec::new();
    let mut ok = true;
    for &p in DEEP_PRIMES_9_MOD_16.iter().chain(&DEEP_PRIMES_1_MOD_16) {
        let r = quartic_h_mod4(p, DEFAULT_DEEP_BOUND, &fixtures).map_err(|e| format!("p={p}: {e}"))?;
        let want = if p % 16 == 9 { r.h_mod4 == 2 } else { r.h % 2 == 0 };
        ok &= want && r.certified == Certification::OracleMatched;
        lines.push(format!("{p}:h={}({})", r.h, r.certified));
    }
    for p in [17u64, 41] {
        let poly = unit_extension_poly(p).map_err(|e| e.to_string())?;
        let ob = maximal_order(&poly).map_err(|e| e.to_string())?;
        let r = class_group(&ob, &fixtures).map_err(|e| e.to_string())?;
        ok &= r.h % 2 == 1 && r.certified == Certification::OracleMatched;
        lines.push(format!("k(√ε_{p}) [{}]:h={}({})", r.poly.join(","), r.h, r.certified));
    }
    let msg = lines.join(" ");
    if ok { Ok(msg) } else { Err(msg) }
}

fn criterion_8() -> Outcome {
    const CASES: u32 = 1000;
    let suites: [Suite; 6] = [
        ("hilbert product formula", common::hilbert_product_formula),
        ("tonelli round trip", common::tonelli_round_trip),
        ("2-adic sqrt consistency", common::sqrt_2adic_consistency),
        ("hnf canonical", common::hnf_canonical),
        ("norm multiplicativity", common::norm_multiplicativity),
        ("cf/convergent round trip", common::cf_convergent_round_trip),
    ];
    let mut bad = Vec::new();
    for (name, f) in suites {
        if let Err(e) = f(CASES) {
            bad.push(format!("{name}: {e}"));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} suites × {CASES} cases (tonelli: {CASES} per prime, {} primes)", suites.len(), common::TEST_PRIMES.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("unit norm −1 (p ≡ 1 mod 4, ≤ 10⁵) and h(Q(√p)) odd (≤ 10⁴)", criterion_1),
        ("unit congruences and ramification of k(√(ε√p)) (p ≡ 1 mod 8, ≤ 10⁵)", criterion_2),
        ("dyadic residues, t = 2, order 4, residue symbol +1 (p ≡ 1 mod 8, ≤ 10⁵)", criterion_3),
        ("√ε residue dichotomy 9 vs 1 mod 16 (≤ 10⁵)", criterion_4),
        ("ambiguous classes = 2^(t−1)/j for fundamental |D| ≤ 500", criterion_5),
        ("odd class number chain passes with j = 2 (p ≡ 1 mod 8, ≤ 10⁵)", criterion_6),
        ("quartic class groups against oracle fixtures", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} [{detail}] ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} [{detail}] ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
