//! Arithmetic in the ring of integers of `k = Q(√p)` for primes
//! `p ≡ 1 (mod 8)`: residues at `(√p)` and at the two dyadic primes,
//! ramification and splitting of places in `k(√δ)/k`.
//!
//! Every finite place used here has completion `Q_q` or the unramified
//! quadratic extension of `Q_q`, so local questions reduce to exact integer
//! computations modulo prime powers.
//!
//! Dyadic labeling: `s` denotes the 2-adic square root of `p` with
//! `s ≡ 1 (mod 4)`. [`PlaceK::DyadicPlus`] is `(2, (1+√p)/2)`, the embedding
//! `√p ↦ −s`; [`PlaceK::DyadicMinus`] is `(2, (1−√p)/2)`, the embedding
//! `√p ↦ +s`.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, big_mod, inv_mod, legendre_u64, mul_mod, pow_mod};
use crate::error::{domain, Error, Result};
use crate::pell::FundUnit;

/// An element `(u + v√p)/2` of `O_k` with `u ≡ v (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInt {
    pub p: u64,
    #[serde(with = "crate::serde_big")]
    pub u: BigInt,
    #[serde(with = "crate::serde_big")]
    pub v: BigInt,
}

impl QuadInt {
    pub fn new(p: u64, u: BigInt, v: BigInt) -> Result<Self> {
        if p % 4 != 1 {
            return domain(format!("O_k representation (u+v√p)/2 needs p ≡ 1 (mod 4), got {p}"));
        }
        if u.is_odd() != v.is_odd() {
            return domain("(u + v√p)/2 is integral only when u ≡ v (mod 2)");
        }
        Ok(QuadInt { p, u, v })
    }

    /// The element `a + b√p`.
    pub fn from_ab(p: u64, a: BigInt, b: BigInt) -> Self {
        QuadInt { p, u: a * 2u32, v: b * 2u32 }
    }

    pub fn from_int(p: u64, a: i64) -> Self {
        Self::from_ab(p, a.into(), BigInt::zero())
    }

    pub fn sqrt_p(p: u64) -> Self {
        Self::from_ab(p, BigInt::zero(), BigInt::one())
    }

    pub fn from_unit(unit: &FundUnit) -> Self {
        Self::from_ab(unit.p, unit.a.clone(), unit.b.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn mul(&self, other: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.p, other.p);
        let p = BigInt::from(self.p);
        // ((u1 + v1√p)(u2 + v2√p))/4 = ((u1u2 + p v1v2)/2 + (u1v2 + v1u2)/2 √p)/2
        let u = (&self.u * &other.u + &p * &self.v * &other.v) / 2u32;
        let v = (&self.u * &other.v + &self.v * &other.u) / 2u32;
        QuadInt { p: self.p, u, v }
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt { p: self.p, u: -&self.u, v: -&self.v }
    }

    pub fn conj(&self) -> QuadInt {
        QuadInt { p: self.p, u: self.u.clone(), v: -&self.v }
    }

    /// `(u² − p·v²)/4`.
    pub fn norm(&self) -> BigInt {
        (&self.u * &self.u - BigInt::from(self.p) * &self.v * &self.v) / 4u32
    }

    /// Exact sign of the real embedding `√p ↦ +√p`.
    pub fn sign_real(&self) -> Sign {
        sign_of_sum(&self.u, &self.v, self.p)
    }

    /// Exact sign of the real embedding `√p ↦ −√p`.
    pub fn sign_real_conj(&self) -> Sign {
        sign_of_sum(&self.u, &(-&self.v), self.p)
    }

    /// Divide by a rational integer, if the quotient stays in `O_k`.
    fn div_int(&self, d: &BigInt) -> Option<QuadInt> {
        if !self.u.is_multiple_of(d) || !self.v.is_multiple_of(d) {
            return None;
        }
        let q = QuadInt { p: self.p, u: &self.u / d, v: &self.v / d };
        (q.u.is_odd() == q.v.is_odd()).then_some(q)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√{})/2", self.u, self.v, self.p)
    }
}

/// Sign of `u + v·√p`.
fn sign_of_sum(u: &BigInt, v: &BigInt, p: u64) -> Sign {
    let (su, sv) = (u.sign(), v.sign());
    if sv == Sign::NoSign || su == sv {
        return if su == Sign::NoSign { sv } else { su };
    }
    if su == Sign::NoSign {
        return sv;
    }
    // Opposite signs: compare u² with p·v².
    let lhs = u * u;
    let rhs = BigInt::from(p) * v * v;
    if lhs > rhs {
        su
    } else {
        sv
    }
}

/// A place of `k = Q(√p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceK {
    /// `√p ↦ +√p`.
    RealEmbeddingPlus,
    /// `√p ↦ −√p`.
    RealEmbeddingMinus,
    /// `(2, (1+√p)/2)`, completion map `√p ↦ −s`.
    DyadicPlus,
    /// `(2, (1−√p)/2)`, completion map `√p ↦ +s`.
    DyadicMinus,
    /// The ramified prime `(√p)`.
    SqrtP,
    /// An odd prime `q ≠ p`. Split primes carry the root `r` of `x² ≡ p`
    /// identifying `(q, r − √p)`; inert primes carry `None`.
    OddPrime { q: u64, root: Option<u64> },
}

impl PlaceK {
    pub fn is_real(&self) -> bool {
        matches!(self, PlaceK::RealEmbeddingPlus | PlaceK::RealEmbeddingMinus)
    }

    pub fn name(&self) -> String {
        match self {
            PlaceK::RealEmbeddingPlus => "real_embedding_plus".into(),
            PlaceK::RealEmbeddingMinus => "real_embedding_minus".into(),
            PlaceK::DyadicPlus => "dyadic_plus".into(),
            PlaceK::DyadicMinus => "dyadic_minus".into(),
            PlaceK::SqrtP => "sqrt_p".into(),
            PlaceK::OddPrime { q, root: Some(r) } => format!("odd_prime({q},{r})"),
            PlaceK::OddPrime { q, root: None } => format!("odd_prime({q})"),
        }
    }
}

impl fmt::Display for PlaceK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Image of `x` under `O_k → O_k/(√p) = Z/p`.
pub fn residue_mod_sqrtp(x: &QuadInt) -> u64 {
    let p = x.p;
    let inv2 = inv_mod(2, p).expect("p odd");
    mul_mod(big_mod(&x.u, p), inv2, p)
}

/// Multiplicative order of `x` in `(Z/p)*`.
pub fn order_mod_p(x: u64, p: u64) -> Result<u64> {
    let x = x % p;
    if x == 0 {
        return domain("order of 0 is undefined");
    }
    let mut order = p - 1;
    for (q, e) in arith::factor_u64(p - 1) {
        for _ in 0..e {
            if pow_mod(x, order / q, p) == 1 {
                order /= q;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Legendre symbol `(x / p)` by Euler's criterion.
pub fn legendre(x: u64, p: u64) -> i8 {
    legendre_u64(x, p)
}

/// Square root of a residue modulo `p`, canonical representative
/// `min(s, p − s)`.
pub fn sqrt_mod_p(x: u64, p: u64) -> Result<u64> {
    match arith::tonelli_shanks(x, p) {
        Some(s) => Ok(s.min(p - s)),
        None => domain(format!("{x} is not a square modulo {p}")),
    }
}

/// The 2-adic square root `s` of `p` with `s ≡ 1 (mod 4)`, returned as the
/// Hensel-lifted representative in `[0, 2^(k+2))` with `s² ≡ p (mod 2^(k+2))`.
/// It is determined modulo `2^k` by these conditions.
pub fn sqrt_2adic(p: u64, k: u32) -> Result<BigInt> {
    if p % 8 != 1 {
        return domain(format!("√{p} is not in Z_2 with s ≡ 1 (mod 4): need p ≡ 1 (mod 8)"));
    }
    if k < 3 {
        return domain("2-adic precision must be at least 3");
    }
    let p = BigInt::from(p);
    let mut s = BigInt::one();
    // Invariant: s² ≡ p (mod 2^m), s ≡ 1 (mod 4).
    for m in 3..(k + 2) {
        let modulus = BigInt::one() << (m + 1);
        if (&s * &s - &p).mod_floor(&modulus) != BigInt::zero() {
            s += BigInt::one() << (m - 1);
        }
    }
    Ok(s)
}

/// Image of `x` in `Z_2 / 2^prec` under the completion at a dyadic place.
pub fn embed_dyadic(x: &QuadInt, place: PlaceK, prec: u32) -> Result<BigInt> {
    let s = sqrt_2adic(x.p, prec.max(3) + 1)?;
    let s = match place {
        PlaceK::DyadicMinus => s,
        PlaceK::DyadicPlus => -s,
        other => return domain(format!("{other} is not a dyadic place")),
    };
    let modulus = BigInt::one() << prec;
    let twice: BigInt = &x.u + &x.v * s;
    Ok((twice / 2u32).mod_floor(&modulus))
}

/// Residue of a 2-adic unit of `O_k` modulo 4 at a dyadic place.
pub fn local_residue_at_2(x: &QuadInt, place: PlaceK) -> Result<u8> {
    if x.norm().is_even() {
        return domain(format!("{x} is not a unit at 2"));
    }
    let r = embed_dyadic(x, place, 2)?;
    Ok(r.to_u8().expect("residue mod 4"))
}

/// Valuation and unit part (mod `2^prec`) of a 2-adic integer given mod
/// `2^total`. `None` if the value vanishes to that precision.
fn split_2adic(x: &BigInt, total: u32) -> Option<(u32, BigInt)> {
    if x.is_zero() {
        return None;
    }
    let v = x.trailing_zeros().expect("nonzero") as u32;
    (v < total).then(|| (v, x >> v))
}

/// Exact precision needed to see the valuation of `x` and its unit part
/// modulo 8 at any place above 2: `v_2(N(x)) + 8` bits.
fn dyadic_precision(x: &QuadInt) -> u32 {
    let n = x.norm();
    arith::valuation(&n, 2) + 8
}

/// Valuation of `x` at a dyadic place and its unit part modulo 8.
pub fn dyadic_valuation_and_unit(x: &QuadInt, place: PlaceK) -> Result<(u32, u8)> {
    if x.is_zero() {
        return domain("valuation of 0");
    }
    let prec = dyadic_precision(x);
    let e = embed_dyadic(x, place, prec)?;
    let (v, w) = split_2adic(&e, prec).ok_or_else(|| Error::Structural("dyadic precision".into()))?;
    Ok((v, (w.mod_floor(&BigInt::from(8))).to_u8().unwrap()))
}

/// q-adic square root of `p` lifted from the root `r` to precision `q^n`.
fn sqrt_qadic(p: u64, q: u64, r: u64, n: u32) -> BigInt {
    let q_big = BigInt::from(q);
    let p_big = BigInt::from(p);
    let mut s = BigInt::from(r);
    let mut modulus = q_big.clone();
    let inv = |x: &BigInt, m: &BigInt| -> BigInt {
        // x is a unit modulo m; extended Euclid on big integers.
        let g = x.extended_gcd(m);
        g.x.mod_floor(m)
    };
    for _ in 1..n {
        modulus *= &q_big;
        // Newton step: s ← s − (s² − p)/(2s).
        let f = &s * &s - &p_big;
        let df = (&s * 2u32).mod_floor(&modulus);
        s = (&s - f * inv(&df, &modulus)).mod_floor(&modulus);
    }
    s
}

/// Valuation of `x` at an odd place other than `(√p)`, and the residue data
/// needed for local square tests: for split places the unit part modulo `q`,
/// for inert places the norm of the unit part modulo `q`.
fn odd_valuation_and_unit(x: &QuadInt, q: u64, root: Option<u64>) -> (u32, u64) {
    let qb = BigInt::from(q);
    let n = x.norm();
    match root {
        Some(r) => {
            let prec = arith::valuation(&n, q) + 2;
            let s = sqrt_qadic(x.p, q, r, prec);
            let modulus = qb.pow(prec);
            let inv2 = BigInt::from(inv_mod(2, q).unwrap());
            // (u + v s)/2; 2 is a q-adic unit.
            let twice = (&x.u + &x.v * &s).mod_floor(&modulus);
            let mut val = 0;
            let mut t = twice;
            while !t.is_zero() && t.is_multiple_of(&qb) {
                t /= &qb;
                val += 1;
            }
            let unit = big_mod(&(t * inv2), q);
            (val, unit)
        }
        None => {
            let val_of = |t: &BigInt| if t.is_zero() { u32::MAX } else { arith::valuation(t, q) };
            let val = val_of(&x.u).min(val_of(&x.v));
            let scale = qb.pow(2 * val);
            let unit_norm = big_mod(&(n / scale), q);
            (val, unit_norm)
        }
    }
}

fn sqrtp_valuation_and_unit(x: &QuadInt) -> (u32, u64) {
    let p = BigInt::from(x.p);
    let v = arith::valuation(&x.norm(), x.p);
    // x = (√p)^v · w; for even v divide by p^(v/2), for odd v multiply by √p
    // first and divide by p^((v+1)/2), giving w·(√p)^... unit in both cases.
    let w = if v.is_multiple_of(2) {
        x.div_int(&p.pow(v / 2))
    } else {
        x.mul(&QuadInt::sqrt_p(x.p)).div_int(&p.pow(v.div_ceil(2)))
    }
    .expect("valuation is exact");
    (v, residue_mod_sqrtp(&w))
}

fn require_p_one_mod_8(p: u64) -> Result<()> {
    if p % 8 != 1 {
        return domain(format!("places of Q(√{p}) are modeled only for p ≡ 1 (mod 8)"));
    }
    Ok(())
}

/// Factor the norm of `x` completely.
fn norm_primes(x: &QuadInt) -> Result<Vec<u64>> {
    let n = x.norm().abs();
    if let Some(m) = n.to_u64() {
        return Ok(arith::factor_u64(m).into_iter().map(|(q, _)| q).collect());
    }
    let primes = arith::primes_up_to(1_000_000);
    let tf = arith::trial_factor(&n.to_biguint().unwrap(), &primes, 1_000_000);
    match tf.cofactor_kind {
        arith::Cofactor::One => Ok(tf.factors.into_iter().map(|(q, _)| q).collect()),
        arith::Cofactor::Prime => {
            let mut out: Vec<u64> = tf.factors.into_iter().map(|(q, _)| q).collect();
            out.push(tf.cofactor.to_u64().expect("prime below 10^12"));
            Ok(out)
        }
        _ => domain(format!("norm of {x} is too large to factor")),
    }
}

/// Odd places of `k` above `q ∤ 2p`.
fn places_above_odd(p: u64, q: u64) -> Vec<PlaceK> {
    if legendre_u64(p, q) == 1 {
        let r = arith::tonelli_shanks(p, q).expect("residue");
        let (r1, r2) = (r.min(q - r), r.max(q - r));
        vec![PlaceK::OddPrime { q, root: Some(r1) }, PlaceK::OddPrime { q, root: Some(r2) }]
    } else {
        vec![PlaceK::OddPrime { q, root: None }]
    }
}

/// All places of `k` that ramify in `k(√δ)`, in the order: real places,
/// dyadic places, `(√p)`, odd primes by `(q, root)`.
pub fn quad_ramified_places(delta: &QuadInt) -> Result<Vec<PlaceK>> {
    if delta.is_zero() {
        return domain("k(√0) is not a field extension");
    }
    let p = delta.p;
    require_p_one_mod_8(p)?;
    let mut places = Vec::new();
    for place in [PlaceK::RealEmbeddingPlus, PlaceK::RealEmbeddingMinus, PlaceK::DyadicPlus, PlaceK::DyadicMinus] {
        if splitting_in_quadratic(place, delta)? == Splitting::Ramified {
            places.push(place);
        }
    }
    let mut odd: Vec<PlaceK> = Vec::new();
    for q in norm_primes(delta)? {
        if q == 2 {
            continue;
        }
        if q == p {
            if splitting_in_quadratic(PlaceK::SqrtP, delta)? == Splitting::Ramified {
                places.push(PlaceK::SqrtP);
            }
            continue;
        }
        for place in places_above_odd(p, q) {
            if splitting_in_quadratic(place, delta)? == Splitting::Ramified {
                odd.push(place);
            }
        }
    }
    places.extend(odd);
    Ok(places)
}

/// Behavior of `place` in `k(√δ)`. Real places report `Ramified` when the
/// embedded `δ` is negative.
pub fn splitting_in_quadratic(place: PlaceK, delta: &QuadInt) -> Result<Splitting> {
    if delta.is_zero() {
        return domain("k(√0) is not a field extension");
    }
    let p = delta.p;
    let sq = |positive: bool| if positive { Splitting::Split } else { Splitting::Inert };
    match place {
        PlaceK::RealEmbeddingPlus | PlaceK::RealEmbeddingMinus => {
            let sign = if place == PlaceK::RealEmbeddingPlus { delta.sign_real() } else { delta.sign_real_conj() };
            Ok(if sign == Sign::Minus { Splitting::Ramified } else { Splitting::Split })
        }
        PlaceK::DyadicPlus | PlaceK::DyadicMinus => {
            require_p_one_mod_8(p)?;
            let (v, w) = dyadic_valuation_and_unit(delta, place)?;
            Ok(if v % 2 == 1 || w % 4 == 3 {
                Splitting::Ramified
            } else {
                sq(w == 1)
            })
        }
        PlaceK::SqrtP => {
            let (v, w) = sqrtp_valuation_and_unit(delta);
            Ok(if v % 2 == 1 { Splitting::Ramified } else { sq(legendre_u64(w, p) == 1) })
        }
        PlaceK::OddPrime { q, root } => {
            if q == 2 || q == p || !arith::is_prime_u64(q) {
                return domain(format!("{q} is not an odd prime distinct from p"));
            }
            let split_prime = legendre_u64(p, q) == 1;
            match root {
                Some(r) if !split_prime || mul_mod(r, r, q) != p % q => {
                    return domain(format!("{r} is not a square root of {p} modulo {q}"))
                }
                None if split_prime => return domain(format!("{q} splits in k; a root is required")),
                _ => {}
            }
            let (v, w) = odd_valuation_and_unit(delta, q, root);
            Ok(if v % 2 == 1 { Splitting::Ramified } else { sq(legendre_u64(w, q) == 1) })
        }
    }
}

/// Residue of a local unit `x` in the residue field of a finite odd place,
/// reduced to the data a quadratic character needs: for `(√p)` and split
/// primes the residue in `F_q`, for inert primes its norm to `F_q`.
pub(crate) fn odd_unit_residue(x: &QuadInt, place: PlaceK) -> Result<(u64, u64)> {
    match place {
        PlaceK::SqrtP => {
            let (v, w) = sqrtp_valuation_and_unit(x);
            if v != 0 {
                return domain(format!("{x} is not a unit at (√p)"));
            }
            Ok((w, x.p))
        }
        PlaceK::OddPrime { q, root } => {
            let (v, w) = odd_valuation_and_unit(x, q, root);
            if v != 0 {
                return domain(format!("{x} is not a unit at {place}"));
            }
            Ok((w, q))
        }
        other => domain(format!("{other} is not an odd finite place")),
    }
}

/// Valuation of `x` at a finite place.
pub fn valuation_at(x: &QuadInt, place: PlaceK) -> Result<u32> {
    match place {
        PlaceK::SqrtP => Ok(sqrtp_valuation_and_unit(x).0),
        PlaceK::OddPrime { q, root } => Ok(odd_valuation_and_unit(x, q, root).0),
        PlaceK::DyadicPlus | PlaceK::DyadicMinus => Ok(dyadic_valuation_and_unit(x, place)?.0),
        other => domain(format!("{other} is archimedean")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pell::fundamental_unit;

    fn q(p: u64, u: i64, v: i64) -> QuadInt {
        QuadInt::new(p, u.into(), v.into()).unwrap()
    }

    fn eps(p: u64) -> QuadInt {
        QuadInt::from_unit(&fundamental_unit(p).unwrap())
    }

    #[test]
    fn parity_is_enforced() {
        assert!(QuadInt::new(41, 1.into(), 2.into()).is_err());
        assert_eq!(q(41, 1, 1).norm(), BigInt::from(-10));
    }

    #[test]
    fn residues_mod_sqrtp() {
        assert_eq!(residue_mod_sqrtp(&q(41, 64, 10)), 32);
        assert_eq!(residue_mod_sqrtp(&q(41, 0, 2)), 0);
        assert_eq!(residue_mod_sqrtp(&eps(17)), 4);
        assert_eq!(residue_mod_sqrtp(&q(41, 1, 1)), 21);
    }

    #[test]
    fn orders_and_symbols() {
        assert_eq!(order_mod_p(32, 41).unwrap(), 4);
        assert_eq!(order_mod_p(1, 41).unwrap(), 1);
        assert_eq!(order_mod_p(27, 41).unwrap(), 8);
        assert!(order_mod_p(41, 41).is_err());
        assert_eq!(legendre(32, 41), 1);
        assert_eq!(legendre(0, 41), 0);
        assert_eq!(legendre(27, 41), -1);
    }

    #[test]
    fn square_roots_mod_p() {
        assert_eq!(sqrt_mod_p(32, 41).unwrap(), 14);
        assert_eq!(sqrt_mod_p(1, 41).unwrap(), 1);
        assert_eq!(sqrt_mod_p(2, 41).unwrap(), 17);
        assert!(sqrt_mod_p(3, 41).is_err());
    }

    #[test]
    fn two_adic_roots() {
        assert_eq!(sqrt_2adic(41, 4).unwrap() % 16, BigInt::from(13));
        let s = sqrt_2adic(17, 3).unwrap();
        assert_eq!(s.mod_floor(&BigInt::from(8)), BigInt::from(1));
        assert_eq!(s.mod_floor(&BigInt::from(16)), BigInt::from(25 % 16));
        assert_eq!((&s * &s).mod_floor(&BigInt::from(32)), BigInt::from(17));
        assert!(sqrt_2adic(13, 4).is_err());
        assert!(sqrt_2adic(17, 2).is_err());
        for p in [17u64, 41, 73, 89, 97, 113] {
            for k in 3..40 {
                let s = sqrt_2adic(p, k).unwrap();
                let m = BigInt::one() << (k + 2);
                assert_eq!((&s * &s - BigInt::from(p)).mod_floor(&m), BigInt::zero());
                let next = sqrt_2adic(p, k + 1).unwrap();
                assert_eq!((&next - &s).mod_floor(&(BigInt::one() << k)), BigInt::zero());
            }
        }
    }

    #[test]
    fn dyadic_residues_of_the_unit() {
        let e = eps(41);
        assert_eq!(local_residue_at_2(&e, PlaceK::DyadicMinus).unwrap(), 1);
        assert_eq!(local_residue_at_2(&e, PlaceK::DyadicPlus).unwrap(), 3);
        let es = e.mul(&QuadInt::sqrt_p(41));
        assert_eq!(es, QuadInt::from_ab(41, 205.into(), 32.into()));
        assert_eq!(local_residue_at_2(&es, PlaceK::DyadicMinus).unwrap(), 1);
        assert_eq!(local_residue_at_2(&es, PlaceK::DyadicPlus).unwrap(), 1);
        let one = QuadInt::from_int(41, 1);
        assert_eq!(local_residue_at_2(&one, PlaceK::DyadicPlus).unwrap(), 1);
        assert!(local_residue_at_2(&QuadInt::from_int(41, 2), PlaceK::DyadicPlus).is_err());
    }

    #[test]
    fn dyadic_label_matches_generator() {
        // (1+√p)/2 lies in DyadicPlus, (1−√p)/2 in DyadicMinus.
        for p in [17u64, 41, 73] {
            let plus = q(p, 1, 1);
            let minus = q(p, 1, -1);
            assert!(valuation_at(&plus, PlaceK::DyadicPlus).unwrap() > 0);
            assert_eq!(valuation_at(&plus, PlaceK::DyadicMinus).unwrap(), 0);
            assert!(valuation_at(&minus, PlaceK::DyadicMinus).unwrap() > 0);
            assert_eq!(valuation_at(&minus, PlaceK::DyadicPlus).unwrap(), 0);
        }
    }

    #[test]
    fn ramified_places_examples() {
        let e = eps(41);
        assert_eq!(
            quad_ramified_places(&e).unwrap(),
            vec![PlaceK::RealEmbeddingMinus, PlaceK::DyadicPlus]
        );
        let es = e.mul(&QuadInt::sqrt_p(41));
        assert_eq!(quad_ramified_places(&es).unwrap(), vec![PlaceK::SqrtP]);
        assert_eq!(quad_ramified_places(&QuadInt::from_int(41, 1)).unwrap(), vec![]);
        assert!(quad_ramified_places(&QuadInt::from_int(41, 0)).is_err());
    }

    #[test]
    fn ramified_places_of_rational_integers() {
        // k(√3)/k for p = 73: 3 splits in k (73 ≡ 1 mod 3), both primes
        // ramify, and 3 ≡ 3 (mod 4) makes both dyadic places ramify.
        let x = QuadInt::from_int(73, 3);
        let places = quad_ramified_places(&x).unwrap();
        assert_eq!(
            places,
            vec![
                PlaceK::DyadicPlus,
                PlaceK::DyadicMinus,
                PlaceK::OddPrime { q: 3, root: Some(1) },
                PlaceK::OddPrime { q: 3, root: Some(2) },
            ]
        );
        // −1: both real places, both dyadic places.
        let m = QuadInt::from_int(41, -1);
        assert_eq!(quad_ramified_places(&m).unwrap().len(), 4);
        // 5 is inert in Q(√17) and 5 ≡ 1 (mod 4).
        assert_eq!(
            quad_ramified_places(&QuadInt::from_int(17, 5)).unwrap(),
            vec![PlaceK::OddPrime { q: 5, root: None }]
        );
        // Squares never ramify anything.
        assert_eq!(quad_ramified_places(&QuadInt::from_int(17, 9 * 25)).unwrap(), vec![]);
    }

    #[test]
    fn splitting_examples() {
        let e = eps(41);
        assert_eq!(splitting_in_quadratic(PlaceK::SqrtP, &e).unwrap(), Splitting::Split);
        let es = e.mul(&QuadInt::sqrt_p(41));
        assert_eq!(splitting_in_quadratic(PlaceK::SqrtP, &es).unwrap(), Splitting::Ramified);
        // p = 73: 3 splits with roots 1, 2. δ = 2 has residue 2, a nonsquare mod 3.
        let two = QuadInt::from_int(73, 2);
        let place = PlaceK::OddPrime { q: 3, root: Some(1) };
        assert_eq!(splitting_in_quadratic(place, &two).unwrap(), Splitting::Inert);
        assert_eq!(splitting_in_quadratic(place, &QuadInt::from_int(73, 4)).unwrap(), Splitting::Split);
        // Wrong root is rejected.
        assert!(splitting_in_quadratic(PlaceK::OddPrime { q: 3, root: Some(0) }, &two).is_err());
    }

    #[test]
    fn odd_split_residue_follows_root() {
        // p = 73, q = 3: √73 ↦ r, so (1 + √73)/2 ↦ (1 + r)/2 mod 3.
        let x = q(73, 1, 1);
        assert_eq!(odd_unit_residue(&x, PlaceK::OddPrime { q: 3, root: Some(2) }).unwrap_err(), Error::Domain(format!("{x} is not a unit at odd_prime(3,2)")));
        assert_eq!(odd_unit_residue(&x, PlaceK::OddPrime { q: 3, root: Some(1) }).unwrap(), (1, 3));
    }

    #[test]
    fn real_signs_are_exact() {
        let e = eps(73);
        assert_eq!(e.sign_real(), Sign::Plus);
        assert_eq!(e.sign_real_conj(), Sign::Minus);
        assert_eq!(q(73, -1, 1).sign_real(), Sign::Plus);
        assert_eq!(q(73, -9, 1).sign_real(), Sign::Minus);
    }
}
