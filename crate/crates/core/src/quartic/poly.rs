//! Integer polynomials and polynomials over prime fields `F_q`.
//!
//! Coefficient vectors are little-endian: `c[0] + c[1]·x + …`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, inv_mod, mul_mod};
use crate::error::{domain, Result};

/// A monic polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 || !coeffs.last().unwrap().is_one() {
            return domain("polynomial must be monic of positive degree");
        }
        Ok(IntPoly { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Power sums `s_k = Σ θ_i^k` for `k < count` by Newton's identities.
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        let n = self.degree();
        // e-coefficients: f = x^n + a_{n-1} x^{n-1} + … ; a_{n-k} = coeffs[n-k].
        let a = |k: usize| -> BigInt { if k <= n { self.coeffs[n - k].clone() } else { BigInt::zero() } };
        let mut s: Vec<BigInt> = Vec::with_capacity(count);
        for k in 0..count {
            if k == 0 {
                s.push(BigInt::from(n));
                continue;
            }
            // s_k + a_1 s_{k-1} + … + a_{k-1} s_1 + k a_k = 0 for k <= n,
            // s_k + a_1 s_{k-1} + … + a_n s_{k-n} = 0 for k > n.
            let mut acc = BigInt::zero();
            for i in 1..k.min(n + 1) {
                acc += a(i) * &s[k - i];
            }
            if k <= n {
                acc += a(k) * BigInt::from(k);
            }
            s.push(-acc);
        }
        s
    }

    /// Discriminant as the determinant of the trace form `Tr(θ^(i+j))`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let s = self.power_sums(2 * n - 1);
        let m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| s[i + j].clone()).collect()).collect();
        super::linalg::det(&m)
    }

    /// Number of real roots by a Sturm sequence.
    pub fn real_root_count(&self) -> usize {
        let to_q = |v: &[BigInt]| -> Vec<BigRational> { v.iter().map(|c| BigRational::from_integer(c.clone())).collect() };
        let f = to_q(&self.coeffs);
        let df: Vec<BigRational> = (1..f.len()).map(|i| &f[i] * BigRational::from_integer(BigInt::from(i))).collect();
        let mut seq = vec![f, df];
        loop {
            let k = seq.len();
            let r = rat_rem(&seq[k - 2], &seq[k - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        let changes = |signs: Vec<i8>| -> usize {
            let nz: Vec<i8> = signs.into_iter().filter(|&s| s != 0).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let sign = |c: &BigRational| -> i8 { if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 } };
        let at_pos = seq.iter().map(|p| sign(p.last().unwrap())).collect();
        let at_neg = seq
            .iter()
            .map(|p| {
                let s = sign(p.last().unwrap());
                if (p.len() - 1) % 2 == 1 { -s } else { s }
            })
            .collect();
        changes(at_neg) - changes(at_pos)
    }

    /// Exact irreducibility test over `Q` for monic integer quartics (and
    /// lower degrees), via rational roots and monic quadratic factor pairs.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.degree();
        if n > 4 {
            return domain("irreducibility test implemented for degree ≤ 4");
        }
        if self.discriminant().is_zero() {
            return Ok(false);
        }
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Ok(n == 1);
        }
        let Some(c0_small) = c0.abs().to_u64() else {
            return domain("constant term too large for the irreducibility test");
        };
        let divisors = divisors_u64(c0_small);
        // Linear factors: integer roots dividing c0.
        for &d in &divisors {
            for r in [BigInt::from(d), -BigInt::from(d)] {
                if self.eval(&r).is_zero() {
                    return Ok(n == 1);
                }
            }
        }
        if n <= 3 {
            return Ok(true);
        }
        // (x² + a x + b)(x² + c x + d): bd = c0, a + c = c3, ac = c2 − b − d, ad + bc = c1.
        let (c1, c2, c3) = (&self.coeffs[1], &self.coeffs[2], &self.coeffs[3]);
        for &m in &divisors {
            for b in [BigInt::from(m), -BigInt::from(m)] {
                let d = c0 / &b;
                let prod = c2 - &b - &d;
                let disc = c3 * c3 - BigInt::from(4) * &prod;
                if disc.is_negative() {
                    continue;
                }
                let r = disc.sqrt();
                if &r * &r != disc || (c3 + &r).is_odd() {
                    continue;
                }
                for sign in [1, -1] {
                    let a: BigInt = (c3 + &r * sign) / 2;
                    let c = c3 - &a;
                    if &a * &d + &b * &c == *c1 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in arith::factor_u64(n) {
        let cur = divs.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// Remainder of rational polynomials; empty vector for the zero polynomial.
fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let coef = &r[k] / &lead;
        for i in 0..=db {
            let t = &coef * &b[i];
            r[k - db + i] -= t;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Dense polynomial over `F_q`; the zero polynomial is the empty vector.
pub type PolyFq = Vec<u64>;

fn trim(mut a: PolyFq) -> PolyFq {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn reduce_int_poly(f: &IntPoly, q: u64) -> PolyFq {
    trim(f.coeffs.iter().map(|c| arith::big_mod(c, q)).collect())
}

pub fn fq_add(a: &[u64], b: &[u64], q: u64) -> PolyFq {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % q).collect())
}

pub fn fq_sub(a: &[u64], b: &[u64], q: u64) -> PolyFq {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + q - b.get(i).copied().unwrap_or(0)) % q).collect())
}

pub fn fq_mul(a: &[u64], b: &[u64], q: u64) -> PolyFq {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, q)) % q;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn fq_divrem(a: &[u64], b: &[u64], q: u64) -> (PolyFq, PolyFq) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv_lead = inv_mod(b[db], q).expect("field");
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![0u64; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let c = mul_mod(r[k], inv_lead, q);
        quo[k - db] = c;
        for i in 0..=db {
            let t = mul_mod(c, b[i], q);
            r[k - db + i] = (r[k - db + i] + q - t) % q;
        }
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn fq_rem(a: &[u64], b: &[u64], q: u64) -> PolyFq {
    fq_divrem(a, b, q).1
}

pub fn fq_monic(a: &[u64], q: u64) -> PolyFq {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => {
            let inv = inv_mod(lead, q).expect("field");
            a.iter().map(|&c| mul_mod(c, inv, q)).collect()
        }
    }
}

pub fn fq_gcd(a: &[u64], b: &[u64], q: u64) -> PolyFq {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = fq_rem(&x, &y, q);
        x = y;
        y = r;
    }
    fq_monic(&x, q)
}

pub fn fq_derivative(a: &[u64], q: u64) -> PolyFq {
    trim((1..a.len()).map(|i| mul_mod(a[i], i as u64 % q, q)).collect())
}

/// `base^exp mod modulus`.
pub fn fq_powmod(base: &[u64], mut exp: u128, modulus: &[u64], q: u64) -> PolyFq {
    let mut acc: PolyFq = fq_rem(&[1], modulus, q);
    let mut b = fq_rem(base, modulus, q);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fq_rem(&fq_mul(&acc, &b, q), modulus, q);
        }
        b = fq_rem(&fq_mul(&b, &b, q), modulus, q);
        exp >>= 1;
    }
    acc
}

/// Squarefree factorization: monic `(g, m)` with `f = lead · Π g^m`.
fn squarefree(f: &[u64], q: u64) -> Vec<(PolyFq, u32)> {
    let f = fq_monic(f, q);
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let df = fq_derivative(&f, q);
    if df.is_empty() {
        // f(x) = g(x^q) = g(x)^q
        let root: PolyFq = f.iter().step_by(q as usize).copied().collect();
        for (g, m) in squarefree(&root, q) {
            out.push((g, m * q as u32));
        }
        return out;
    }
    let mut c = fq_gcd(&f, &df, q);
    let mut w = fq_divrem(&f, &c, q).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = fq_gcd(&w, &c, q);
        let fac = fq_divrem(&w, &y, q).0;
        if fac.len() > 1 {
            out.push((fq_monic(&fac, q), i));
        }
        i += 1;
        w = y;
        c = fq_divrem(&c, &w, q).0;
    }
    if c.len() > 1 {
        let root: PolyFq = c.iter().step_by(q as usize).copied().collect();
        for (g, m) in squarefree(&root, q) {
            out.push((g, m * q as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
fn distinct_degree(f: &[u64], q: u64) -> Vec<(PolyFq, usize)> {
    let mut out = Vec::new();
    let mut g = f.to_vec();
    let x: PolyFq = vec![0, 1];
    let mut h = fq_rem(&x, &g, q);
    let mut d = 1;
    while g.len() > 2 * d {
        h = fq_powmod(&h, q as u128, &g, q);
        let diff = fq_sub(&h, &x, q);
        let factor = fq_gcd(&g, &diff, q);
        if factor.len() > 1 {
            g = fq_divrem(&g, &factor, q).0;
            h = fq_rem(&h, &g, q);
            out.push((factor, d));
        }
        d += 1;
    }
    if g.len() > 1 {
        let deg = g.len() - 1;
        out.push((fq_monic(&g, q), deg));
    }
    out
}

/// Equal-degree splitting of a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &[u64], d: usize, q: u64, rng: &mut ChaCha8Rng) -> Vec<PolyFq> {
    let n = f.len() - 1;
    if n == d {
        return vec![fq_monic(f, q)];
    }
    loop {
        let a: PolyFq = trim((0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = if q == 2 {
            // Trace map a + a² + … + a^(2^(d−1)).
            let mut t = fq_rem(&a, f, q);
            let mut acc = t.clone();
            for _ in 1..d {
                t = fq_rem(&fq_mul(&t, &t, q), f, q);
                acc = fq_add(&acc, &t, q);
            }
            acc
        } else {
            let e = ((q as u128).pow(d as u32) - 1) / 2;
            fq_sub(&fq_powmod(&a, e, f, q), &[1], q)
        };
        let g = fq_gcd(f, &b, q);
        if g.len() > 1 && g.len() < f.len() {
            let other = fq_divrem(f, &g, q).0;
            let mut out = equal_degree(&g, d, q, rng);
            out.extend(equal_degree(&other, d, q, rng));
            return out;
        }
    }
}

/// Factor `f` over `F_q` into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients). Splitting is seeded, so the output
/// is deterministic.
pub fn factor_mod(f: &[u64], q: u64) -> Vec<(PolyFq, u32)> {
    assert!(q < (1 << 32), "prime field too large for u128 exponents");
    let mut rng = ChaCha8Rng::seed_from_u64(q ^ 0x5eed);
    let mut out = Vec::new();
    for (g, m) in squarefree(f, q) {
        for (h, d) in distinct_degree(&g, q) {
            for irr in equal_degree(&h, d, q, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.len(), a.0.iter().rev().collect::<Vec<_>>()).cmp(&(b.0.len(), b.0.iter().rev().collect::<Vec<_>>())));
    out
}

/// Roots in `F_q` of a nonzero polynomial.
pub fn roots_mod(f: &[u64], q: u64) -> Vec<u64> {
    let mut roots: Vec<u64> = factor_mod(f, q)
        .into_iter()
        .filter(|(g, _)| g.len() == 2)
        .map(|(g, _)| (q - g[0]) % q)
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots
}
