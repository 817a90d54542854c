//! Negative Pell equation `a² − p·b² = −1` via the periodic continued
//! fraction of `√p`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Cofactor};
use crate::error::{domain, Error, Result};

/// Default trial-division cap used when factoring `b`.
pub const DEFAULT_TRIAL_CAP: u64 = 10_000_000;

/// Continued fraction `√p = [a0; period]` with the minimal period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFExpansion {
    pub p: u64,
    pub a0: u64,
    pub period: Vec<u64>,
}

/// The fundamental unit `ε = a + b√p` of norm −1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundUnit {
    pub p: u64,
    #[serde(with = "crate::serde_big")]
    pub a: BigInt,
    #[serde(with = "crate::serde_big")]
    pub b: BigInt,
}

impl FundUnit {
    /// `a² − p·b²`; equals −1 for a genuine unit of norm −1.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(self.p) * &self.b * &self.b
    }
}

pub fn continued_fraction_sqrt(n: u64) -> Result<CFExpansion> {
    if n < 2 {
        return domain(format!("continued fraction of √{n} requires n > 1"));
    }
    let a0 = n.sqrt();
    if a0 * a0 == n {
        return domain(format!("{n} is a perfect square"));
    }
    // State (P, Q) represents (P + √n)/Q. The first periodic state is the
    // one reached after emitting a0.
    let (n, a0w) = (n as u128, a0 as u128);
    let step = |p: u128, q: u128, a: u128| -> (u128, u128) {
        let p_next = a * q - p;
        let q_next = (n - p_next * p_next) / q;
        (p_next, q_next)
    };
    let start = step(0, 1, a0w);
    let mut state = start;
    let mut period = Vec::new();
    loop {
        let (p, q) = state;
        let a = (a0w + p) / q;
        period.push(a as u64);
        state = step(p, q, a);
        if state == start {
            break;
        }
    }
    Ok(CFExpansion { p: n as u64, a0, period })
}

/// Convergents `h_k / k_k` for `k = 0..count` of the continued fraction,
/// cycling the period as needed.
pub fn convergents(cf: &CFExpansion, count: usize) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(count);
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(cf.a0));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    if count == 0 {
        return out;
    }
    out.push((h.clone(), k.clone()));
    for term in cf.period.iter().cycle().take(count - 1) {
        let t = BigInt::from(*term);
        let h_next = &t * &h + &h_prev;
        let k_next = &t * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        out.push((h.clone(), k.clone()));
    }
    out
}

/// The fundamental solution of `a² − p·b² = −1` for a prime `p ≡ 1 (mod 4)`.
///
/// An even period means no solution exists; for such primes that contradicts
/// a classical theorem and is reported as [`Error::Falsified`].
pub fn fundamental_unit(p: u64) -> Result<FundUnit> {
    if p % 4 != 1 || !arith::is_prime_u64(p) {
        return domain(format!("{p} is not a prime ≡ 1 (mod 4)"));
    }
    let cf = continued_fraction_sqrt(p)?;
    let len = cf.period.len();
    if len % 2 == 0 {
        return Err(Error::Falsified(format!(
            "√{p} has even period length {len}: no unit of norm −1"
        )));
    }
    let (a, b) = convergents(&cf, len).pop().expect("period is nonempty");
    let unit = FundUnit { p, a, b };
    if unit.norm() != BigInt::from(-1) {
        return Err(Error::Structural(format!("convergent for {p} does not have norm −1")));
    }
    Ok(unit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorVerdict {
    Pass,
    Fail,
    /// A composite cofactor `≡ 1 (mod 4)` survived trial division.
    Inconclusive,
}

/// The three congruence conditions on `ε = a + b√p` for `p ≡ 1 (mod 8)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub four_divides_a: bool,
    pub b_one_mod_four: bool,
    pub b_prime_factors: FactorVerdict,
    /// Prime factors of `b` found by trial division.
    pub b_small_factors: Vec<(u64, u32)>,
    /// Unfactored part of `b`, 1 when fully factored.
    #[serde(with = "crate::serde_big_uint")]
    pub b_cofactor: BigUint,
}

impl CongruenceReport {
    /// True iff all three verdicts pass.
    pub fn passes(&self) -> bool {
        self.four_divides_a && self.b_one_mod_four && self.b_prime_factors == FactorVerdict::Pass
    }

    /// True iff none of the three verdicts is a failure.
    pub fn consistent(&self) -> bool {
        self.four_divides_a && self.b_one_mod_four && self.b_prime_factors != FactorVerdict::Fail
    }
}

fn primes_to_default_cap() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| arith::primes_up_to(DEFAULT_TRIAL_CAP))
}

pub fn check_unit_congruences(u: &FundUnit) -> Result<CongruenceReport> {
    check_unit_congruences_with_cap(u, DEFAULT_TRIAL_CAP)
}

pub fn check_unit_congruences_with_cap(u: &FundUnit, cap: u64) -> Result<CongruenceReport> {
    if u.p % 8 != 1 {
        return domain(format!("congruence checks need p ≡ 1 (mod 8), got {}", u.p));
    }
    if u.b.sign() != Sign::Plus {
        return domain("b must be positive");
    }
    let four = BigInt::from(4);
    let four_divides_a = u.a.is_multiple_of(&four);
    let b_one_mod_four = u.b.mod_floor(&four).is_one();

    let primes: &[u64] = if cap <= DEFAULT_TRIAL_CAP {
        primes_to_default_cap()
    } else {
        return domain(format!("trial cap {cap} exceeds {DEFAULT_TRIAL_CAP}"));
    };
    let b = u.b.abs().to_biguint().expect("positive");
    let tf = arith::trial_factor(&b, primes, cap);
    let small_ok = tf.factors.iter().all(|&(q, _)| q % 4 == 1);
    let cof_mod4 = (&tf.cofactor % 4u32).try_into().unwrap_or(0u32);
    let b_prime_factors = if !small_ok {
        FactorVerdict::Fail
    } else {
        match tf.cofactor_kind {
            Cofactor::One => FactorVerdict::Pass,
            Cofactor::Prime | Cofactor::ProbablePrime if cof_mod4 == 1 => FactorVerdict::Pass,
            Cofactor::Prime | Cofactor::ProbablePrime => FactorVerdict::Fail,
            // An odd number ≡ 3 (mod 4) has a prime factor ≡ 3 (mod 4).
            Cofactor::Composite if cof_mod4 == 3 => FactorVerdict::Fail,
            Cofactor::Composite => FactorVerdict::Inconclusive,
        }
    };
    Ok(CongruenceReport {
        four_divides_a,
        b_one_mod_four,
        b_prime_factors,
        b_small_factors: tf.factors,
        b_cofactor: tf.cofactor,
    })
}
