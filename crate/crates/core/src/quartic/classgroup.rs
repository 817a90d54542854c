//! Minkowski bound, principality search and relation-based class groups.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::embed::{combine, reduced_basis, shell, Embeddings};
use super::fixtures::Fixtures;
use super::ideal::{factor_prime, Ideal, PrimeIdeal};
use super::linalg::smith_diagonal;
use super::order::{maximal_order, Elt, OrderBasis};
use super::poly::IntPoly;
use crate::arith;
use crate::error::{domain, Result};

/// Deep-check primes `p ≡ 9 (mod 16)`.
pub const DEEP_PRIMES_9_MOD_16: [u64; 4] = [41, 73, 89, 137];
/// Deep-check primes `p ≡ 1 (mod 16)`.
pub const DEEP_PRIMES_1_MOD_16: [u64; 3] = [17, 97, 113];
/// Largest `p` accepted by [`quartic_h_mod4`] unless configured otherwise.
pub const DEFAULT_DEEP_BOUND: u64 = 200;
/// Default coefficient bound (in an LLL-reduced basis) for [`is_principal`].
pub const DEFAULT_PRINCIPAL_BOUND: i64 = 4;

/// Lower bound for π used to over-approximate `4/π`.
fn pi_lower() -> BigRational {
    BigRational::new(BigInt::from(314_159u32), BigInt::from(100_000u32))
}

/// Ceiling of a certified upper bound for
/// `(4/π)^{r2} · n!/n^n · √|disc|`.
pub fn minkowski_bound_from(disc: &BigInt, n: usize, r2: usize) -> BigInt {
    let a = disc.abs();
    let mut root = a.sqrt();
    if &root * &root != a {
        root += 1;
    }
    let four_over_pi = BigRational::from_integer(BigInt::from(4)) / pi_lower();
    let mut b = BigRational::from_integer(root);
    for _ in 0..r2 {
        b *= &four_over_pi;
    }
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    b *= BigRational::new(fact, num_traits::pow(BigInt::from(n), n));
    b.ceil().to_integer()
}

pub fn minkowski_bound(ob: &OrderBasis) -> BigInt {
    minkowski_bound_from(&ob.disc, ob.degree(), ob.r2)
}

/// Searches the ideal for a generator among coefficient vectors of size at
/// most `search_bound` in an LLL-reduced basis. `None` is inconclusive.
pub fn is_principal(ideal: &Ideal, ob: &OrderBasis, search_bound: i64) -> Option<Elt> {
    let emb = Embeddings::new(ob);
    principal_search(ideal, ob, &emb, search_bound)
}

/// [`is_principal`] with the default bound, doubled twice on failure.
pub fn is_principal_default(ideal: &Ideal, ob: &OrderBasis) -> Option<Elt> {
    let emb = Embeddings::new(ob);
    [1, 2, 4].iter().find_map(|m| principal_search(ideal, ob, &emb, DEFAULT_PRINCIPAL_BOUND * m))
}

fn principal_search(ideal: &Ideal, ob: &OrderBasis, emb: &Embeddings, bound: i64) -> Option<Elt> {
    let target = ideal.norm();
    if target.is_one() {
        return Some(ob.one());
    }
    let basis = reduced_basis(ob, emb, &ideal.hnf);
    for r in 1..=bound {
        for c in shell(basis.len(), r) {
            let alpha = combine(&basis, &c);
            if ob.norm(&alpha).abs() == target && Ideal::principal(ob, &alpha).ok().as_ref() == Some(ideal) {
                return Some(alpha);
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    OracleMatched,
    Heuristic,
}

impl std::fmt::Display for Certification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Certification::OracleMatched => "oracle_matched",
            Certification::Heuristic => "heuristic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupResult {
    /// Coefficients `c0..c4` as decimal strings.
    pub poly: Vec<String>,
    #[serde(with = "crate::serde_big")]
    pub disc: BigInt,
    pub signature: (usize, usize),
    #[serde(with = "crate::serde_big")]
    pub minkowski_bound: BigInt,
    pub factor_base: usize,
    pub relations: usize,
    pub h: u64,
    pub elementary_divisors: Vec<u64>,
    pub h_mod4: u8,
    pub certified: Certification,
    pub oracle_h: Option<u64>,
    pub diagnostic: Option<String>,
}

/// Budgets for the relation search.
#[derive(Debug, Clone)]
pub struct ClassGroupConfig {
    pub seed: u64,
    /// Relations that must leave the lattice unchanged before stopping,
    /// in addition to one per generator.
    pub stable_after: usize,
    /// Random ideal products tried before giving up.
    pub max_rounds: usize,
    /// Largest |disc| accepted.
    pub max_abs_disc: BigInt,
}

impl Default for ClassGroupConfig {
    fn default() -> Self {
        ClassGroupConfig { seed: 0x9e37_79b9, stable_after: 40, max_rounds: 20_000, max_abs_disc: BigInt::from(10u64.pow(11)) }
    }
}

/// Relation lattice kept in Hermite form, one row per pivot column.
struct RelationLattice {
    rows: Vec<Option<Vec<BigInt>>>,
    rank: usize,
}

impl RelationLattice {
    fn new(m: usize) -> Self {
        RelationLattice { rows: vec![None; m], rank: 0 }
    }

    fn full(&self) -> bool {
        self.rank == self.rows.len()
    }

    fn det(&self) -> Option<BigInt> {
        self.full().then(|| self.rows.iter().enumerate().map(|(i, r)| r.as_ref().unwrap()[i].clone()).product())
    }

    fn reduce_mod(v: &mut [BigInt], d: &BigInt) {
        for x in v.iter_mut() {
            *x = x.mod_floor(d);
        }
    }

    /// Adds a relation; returns whether the lattice grew.
    fn insert(&mut self, rel: &[i64]) -> bool {
        let m = self.rows.len();
        let mut v: Vec<BigInt> = rel.iter().map(|&x| BigInt::from(x)).collect();
        let det = self.det();
        if let Some(d) = &det {
            Self::reduce_mod(&mut v, d);
        }
        let mut changed = false;
        for col in 0..m {
            if v[col].is_zero() {
                continue;
            }
            let Some(p) = self.rows[col].as_mut() else {
                if v[col].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows[col] = Some(v);
                self.rank += 1;
                if self.full() {
                    self.normalize();
                }
                return true;
            };
            let (a, b) = (p[col].clone(), v[col].clone());
            if b.is_multiple_of(&a) {
                let k = &b / &a;
                for j in col..m {
                    let t = &k * &p[j];
                    v[j] -= t;
                }
            } else {
                let eg = a.extended_gcd(&b);
                let (ag, bg) = (&a / &eg.gcd, &b / &eg.gcd);
                for j in col..m {
                    let np = &eg.x * &p[j] + &eg.y * &v[j];
                    let nv = &bg * &p[j] - &ag * &v[j];
                    p[j] = np;
                    v[j] = nv;
                }
                if p[col].is_negative() {
                    p.iter_mut().for_each(|x| *x = -&*x);
                }
                changed = true;
            }
            if let Some(d) = &det {
                Self::reduce_mod(&mut v, d);
            }
        }
        if changed && self.full() {
            self.normalize();
        }
        changed
    }

    /// Reduces entries right of each pivot modulo the determinant.
    fn normalize(&mut self) {
        let d = self.det().expect("full rank");
        for (i, r) in self.rows.iter_mut().enumerate() {
            let r = r.as_mut().unwrap();
            for x in r.iter_mut().skip(i + 1) {
                *x = x.mod_floor(&d);
            }
        }
    }

    /// Invariant factors > 1 of `Z^m / L` (zeros mark free rank).
    fn invariants(&self) -> Vec<BigInt> {
        let m = self.rows.len();
        if !self.full() {
            let mat: Vec<Vec<BigInt>> =
                self.rows.iter().map(|r| r.clone().unwrap_or_else(|| vec![BigInt::zero(); m])).collect();
            let mut d = smith_diagonal(&mat);
            d.retain(|x| !x.is_one());
            return d;
        }
        let det = self.det().unwrap();
        let mut h: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.clone().unwrap()).collect();
        for i in (0..m).rev() {
            if !h[i][i].is_one() {
                continue;
            }
            let row_i = h[i].clone();
            for k in 0..i {
                if h[k][i].is_zero() {
                    continue;
                }
                let c = h[k][i].clone();
                for j in i..m {
                    let t = &c * &row_i[j];
                    h[k][j] = (&h[k][j] - t).mod_floor(&det);
                }
            }
        }
        let keep: Vec<usize> = (0..m).filter(|&i| !h[i][i].is_one()).collect();
        let block: Vec<Vec<BigInt>> = keep.iter().map(|&i| keep.iter().map(|&j| h[i][j].clone()).collect()).collect();
        let mut d = smith_diagonal(&block);
        d.retain(|x| !x.is_one());
        d
    }
}

struct FactorBase<'a> {
    ob: &'a OrderBasis,
    primes: Vec<PrimeIdeal>,
    /// Rational prime → indices of its factor-base primes.
    by_q: BTreeMap<u64, Vec<usize>>,
    /// All rational primes up to the bound.
    rational: Vec<u64>,
}

impl FactorBase<'_> {
    /// Exponent vector of `(α)` when it factors over the base.
    fn relation(&self, alpha: &[BigInt]) -> Option<Vec<i64>> {
        let norm = self.ob.norm(alpha).abs();
        if norm.is_zero() {
            return None;
        }
        let mut rest = norm;
        let mut vals: Vec<(u64, u32)> = Vec::new();
        if let Some(mut r) = rest.to_u128() {
            for &q in &self.rational {
                let q128 = q as u128;
                let mut e = 0;
                while r % q128 == 0 {
                    r /= q128;
                    e += 1;
                }
                if e > 0 {
                    vals.push((q, e));
                }
                if r == 1 {
                    break;
                }
            }
            if r != 1 {
                return None;
            }
        } else {
            for &q in &self.rational {
                let e = arith::valuation(&rest, q);
                if e > 0 {
                    rest /= num_traits::pow(BigInt::from(q), e as usize);
                    vals.push((q, e));
                }
            }
            if !rest.is_one() {
                return None;
            }
        }
        let mut rel = vec![0i64; self.primes.len()];
        for (q, e) in vals {
            let idx = self.by_q.get(&q)?;
            let mut seen = 0;
            for &i in idx {
                let v = self.primes[i].valuation(self.ob, alpha);
                rel[i] = v as i64;
                seen += v * self.primes[i].f;
            }
            if seen != e {
                return None;
            }
        }
        Some(rel)
    }
}

struct Search<'a> {
    fb: FactorBase<'a>,
    emb: Embeddings,
    lattice: RelationLattice,
    relations: usize,
    since_change: usize,
    stable_needed: usize,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.lattice.full() && self.since_change >= self.stable_needed
    }

    fn add(&mut self, rel: &[i64]) {
        self.relations += 1;
        if self.lattice.insert(rel) {
            self.since_change = 0;
        } else if self.lattice.full() {
            self.since_change += 1;
        }
    }

    /// Relations from elements of `ideal` up to `radius`, at most `cap`.
    fn harvest(&mut self, rows: &[Vec<BigInt>], radius: i64, cap: usize) {
        let basis = reduced_basis(self.fb.ob, &self.emb, rows);
        let mut found = 0;
        for r in 1..=radius {
            for c in shell(basis.len(), r) {
                let alpha = combine(&basis, &c);
                if let Some(rel) = self.fb.relation(&alpha) {
                    if rel.iter().all(|&x| x == 0) {
                        continue;
                    }
                    self.add(&rel);
                    found += 1;
                    if found >= cap || self.done() {
                        return;
                    }
                }
            }
        }
    }
}

fn poly_key(poly: &IntPoly) -> Option<[i64; 5]> {
    if poly.coeffs.len() != 5 {
        return None;
    }
    let mut k = [0i64; 5];
    for (slot, c) in k.iter_mut().zip(&poly.coeffs) {
        *slot = c.to_i64()?;
    }
    Some(k)
}

/// Class group of the maximal order, certified against `fixtures`.
pub fn class_group(ob: &OrderBasis, fixtures: &Fixtures) -> Result<ClassGroupResult> {
    class_group_with(ob, fixtures, &ClassGroupConfig::default())
}

pub fn class_group_with(ob: &OrderBasis, fixtures: &Fixtures, cfg: &ClassGroupConfig) -> Result<ClassGroupResult> {
    if ob.disc.abs() > cfg.max_abs_disc {
        return domain(format!("|disc| = {} exceeds the configured bound {}", ob.disc.abs(), cfg.max_abs_disc));
    }
    let bound = minkowski_bound(ob);
    let bound_u = bound.to_u64().expect("bound fits after the disc check");
    let rational = arith::primes_up_to(bound_u);
    let mut primes = Vec::new();
    for &q in &rational {
        for p in factor_prime(q, ob)? {
            if p.norm() <= bound {
                primes.push(p);
            }
        }
    }
    let mut by_q: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, p) in primes.iter().enumerate() {
        by_q.entry(p.q).or_default().push(i);
    }
    let m = primes.len();
    let mut search = Search {
        fb: FactorBase { ob, primes, by_q, rational },
        emb: Embeddings::new(ob),
        lattice: RelationLattice::new(m),
        relations: 0,
        since_change: 0,
        stable_needed: cfg.stable_after + m,
    };
    let mut diagnostic = None;

    if m > 0 {
        let unit_rows: Vec<Vec<BigInt>> = (0..ob.degree()).map(|i| ob.basis_vector(i)).collect();
        search.harvest(&unit_rows, 3, usize::MAX);
        for i in 0..m {
            if search.done() {
                break;
            }
            let ideal = search.fb.primes[i].ideal.clone();
            // Principality hit: P = (α) gives the relation e_P.
            if let Some(alpha) = principal_search(&ideal, ob, &search.emb, 2) {
                if let Some(rel) = search.fb.relation(&alpha) {
                    search.add(&rel);
                }
            }
            search.harvest(&ideal.hnf, 2, 6);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut rounds = 0;
        while !search.done() && rounds < cfg.max_rounds {
            rounds += 1;
            let k = rng.gen_range(2..=3);
            let mut ideal = Ideal::unit(ob);
            for _ in 0..k {
                let i = rng.gen_range(0..m);
                ideal = ideal.mul(&search.fb.primes[i].ideal, ob);
            }
            search.harvest(&ideal.hnf, 2, 4);
        }
        if !search.done() {
            diagnostic = Some(format!(
                "relation budget exhausted: rank {}/{}, {} relations since last change",
                search.lattice.rank, m, search.since_change
            ));
        }
    }

    let invariants = search.lattice.invariants();
    let torsion: Vec<u64> = invariants.iter().filter(|x| !x.is_zero()).map(|x| x.to_u64().expect("small class group")).collect();
    let h: u64 = torsion.iter().product();
    let key = poly_key(&ob.poly);
    let oracle_h = key.and_then(|k| fixtures.lookup(&k));
    let full = search.lattice.full();
    let certified = if full && oracle_h == Some(h) { Certification::OracleMatched } else { Certification::Heuristic };
    if diagnostic.is_none() {
        if let Some(o) = oracle_h.filter(|&o| o != h) {
            diagnostic = Some(format!("computed h = {h} disagrees with the oracle value {o}"));
        }
    }
    Ok(ClassGroupResult {
        poly: ob.poly.coeffs.iter().map(|c| c.to_string()).collect(),
        disc: ob.disc.clone(),
        signature: (ob.r1, ob.r2),
        minkowski_bound: bound,
        factor_base: m,
        relations: search.relations,
        h,
        elementary_divisors: torsion,
        h_mod4: (h % 4) as u8,
        certified,
        oracle_h,
        diagnostic,
    })
}

/// Class group of `Q(p^{1/4})` reduced mod 4.
pub fn quartic_h_mod4(p: u64, deep_bound: u64, fixtures: &Fixtures) -> Result<ClassGroupResult> {
    if !arith::is_prime_u64(p) || p % 8 != 1 {
        return domain(format!("{p} is not a prime ≡ 1 (mod 8)"));
    }
    if p > deep_bound {
        return domain(format!("{p} exceeds the deep-check bound {deep_bound}"));
    }
    let ob = maximal_order(&pure_quartic(p)?)?;
    class_group(&ob, fixtures)
}

/// `x⁴ − m`.
pub fn pure_quartic(m: u64) -> Result<IntPoly> {
    IntPoly::new(vec![-BigInt::from(m), BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::one()])
}
