//! Elementary integer arithmetic shared by every module: modular powers,
//! primality, factorization and square roots modulo primes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Reduce a big integer into `[0, m)`.
pub fn big_mod(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

const MR_BASES_U64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES_U64 {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first 24 primes as bases. Exact below 3.3e24,
/// probabilistic above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in SMALL_PRIMES.iter().take(24) {
        let a = BigUint::from(*a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Sieve of Eratosthenes: all primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Complete factorization of a 64-bit integer, sorted by prime.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n < 2 {
        return out;
    }
    for p in SMALL_PRIMES {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut large = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            large.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    large.sort_unstable();
    for q in large {
        match out.last_mut() {
            Some((p, e)) if *p == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out.sort_unstable();
    out
}

/// Factorization of a big integer by trial division up to `cap`, with the
/// leftover cofactor classified by a primality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFactorization {
    pub factors: Vec<(u64, u32)>,
    pub cofactor: BigUint,
    pub cofactor_kind: Cofactor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cofactor {
    One,
    /// Certainly prime: below `cap²`, or a 64-bit prime.
    Prime,
    ProbablePrime,
    Composite,
}

/// Trial-divide `n` by all primes up to `cap`.
pub fn trial_factor(n: &BigUint, primes: &[u64], cap: u64) -> TrialFactorization {
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let usable: Vec<u64> = primes.iter().copied().take_while(|&p| p <= cap).collect();
    let mut i = 0;
    'outer: while i < usable.len() {
        if let Some(small) = rest.to_u64() {
            if usable[i].saturating_mul(usable[i]) > small {
                break;
            }
        }
        // One big reduction per batch of primes whose product fits in a u64.
        let mut modulus = 1u64;
        let mut j = i;
        while j < usable.len() {
            match modulus.checked_mul(usable[j]) {
                Some(m) => modulus = m,
                None => break,
            }
            j += 1;
        }
        let r = (&rest % modulus).to_u64().expect("residue below modulus");
        for &p in &usable[i..j] {
            if r.is_multiple_of(p) {
                let mut e = 0;
                while (&rest % p).is_zero() {
                    rest /= p;
                    e += 1;
                }
                factors.push((p, e));
                if rest.is_one() {
                    break 'outer;
                }
            }
        }
        i = j;
    }
    let kind = if rest.is_one() {
        Cofactor::One
    } else if rest <= BigUint::from(cap) * BigUint::from(cap) || rest.to_u64().is_some_and(is_prime_u64) {
        Cofactor::Prime
    } else if is_probable_prime(&rest) {
        Cofactor::ProbablePrime
    } else {
        Cofactor::Composite
    };
    TrialFactorization { factors, cofactor: rest, cofactor_kind: kind }
}

/// Euler's criterion: `x^((p-1)/2) mod p` mapped to {1, -1, 0}.
pub fn legendre_u64(x: u64, p: u64) -> i8 {
    let x = x % p;
    if x == 0 {
        return 0;
    }
    if pow_mod(x, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks square root modulo an odd prime. Returns `None` for
/// nonresidues. The returned root is not normalized.
pub fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(n);
    }
    if legendre_u64(n, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(n, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while legendre_u64(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Exponent of the prime `q` in the nonzero integer `n`.
pub fn valuation(n: &BigInt, q: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let q = BigInt::from(q);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quo, rem) = n.div_rem(&q);
        if !rem.is_zero() {
            return v;
        }
        n = quo;
        v += 1;
    }
}

pub fn is_square_u64(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}
