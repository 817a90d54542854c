//! Integral ideals in HNF, prime decomposition and valuations.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::linalg::{hnf, left_kernel_mod, rref_mod, solve_upper_int};
use super::order::{Elt, OrderBasis};
use super::poly::{factor_mod, reduce_int_poly, roots_mod};
use crate::arith::{self, mul_mod};
use crate::error::{domain, Error, Result};

/// A nonzero integral ideal, stored as the upper-triangular HNF of its
/// `Z`-basis in order coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub hnf: Vec<Vec<BigInt>>,
}

impl Ideal {
    pub fn unit(ob: &OrderBasis) -> Ideal {
        let n = ob.degree();
        Ideal { hnf: (0..n).map(|i| ob.basis_vector(i)).collect() }
    }

    /// Ideal generated as an `O`-module by `gens`.
    pub fn from_generators(ob: &OrderBasis, gens: &[Elt]) -> Result<Ideal> {
        let n = ob.degree();
        let mut rows = Vec::with_capacity(gens.len() * n);
        for g in gens {
            for i in 0..n {
                rows.push(ob.mul(g, &ob.basis_vector(i)));
            }
        }
        let h = hnf(&rows, n);
        if h.len() != n {
            return domain("generators span the zero ideal");
        }
        Ok(Ideal { hnf: h })
    }

    /// Ideal whose `Z`-span is given by `rows` (assumed closed under `O`).
    pub(crate) fn from_z_basis(rows: &[Vec<BigInt>], n: usize) -> Ideal {
        Ideal { hnf: hnf(rows, n) }
    }

    pub fn principal(ob: &OrderBasis, x: &[BigInt]) -> Result<Ideal> {
        Self::from_generators(ob, &[x.to_vec()])
    }

    /// Index `[O : I]`.
    pub fn norm(&self) -> BigInt {
        self.hnf.iter().enumerate().map(|(i, r)| r[i].clone()).product()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        solve_upper_int(&self.hnf, x).is_some()
    }

    pub fn mul(&self, other: &Ideal, ob: &OrderBasis) -> Ideal {
        let n = ob.degree();
        let mut rows = Vec::with_capacity(n * n + n);
        for a in &self.hnf {
            for b in &other.hnf {
                rows.push(ob.mul(a, b));
            }
        }
        // N(I)N(J) O ⊆ IJ keeps the elimination small.
        let nn = self.norm() * other.norm();
        for i in 0..n {
            let mut e = ob.basis_vector(i);
            for c in e.iter_mut() {
                *c *= &nn;
            }
            rows.push(e);
        }
        Self::from_z_basis(&rows, n)
    }

    pub fn pow(&self, k: u32, ob: &OrderBasis) -> Ideal {
        let mut acc = Ideal::unit(ob);
        for _ in 0..k {
            acc = acc.mul(self, ob);
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }
}

/// Ideal generated by `generators`, in canonical HNF.
pub fn ideal_reduce_hnf(ob: &OrderBasis, generators: &[Elt]) -> Result<Ideal> {
    Ideal::from_generators(ob, generators)
}

pub fn ideal_norm(ideal: &Ideal) -> BigInt {
    ideal.norm()
}

pub fn ideal_mul(a: &Ideal, b: &Ideal, ob: &OrderBasis) -> Ideal {
    a.mul(b, ob)
}

/// A prime ideal above the rational prime `q`.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeIdeal {
    pub q: u64,
    pub e: u32,
    pub f: u32,
    #[serde(skip)]
    pub ideal: Ideal,
    /// `γ ∈ O \ qO` with `γ P ⊆ qO`; `γ/q` has valuation −1 at this prime
    /// and is integral at every other prime.
    #[serde(skip)]
    gamma: Elt,
}

impl PrimeIdeal {
    pub fn norm(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.q), self.f as usize)
    }

    /// `v_P(x)` for nonzero `x ∈ O`.
    pub fn valuation(&self, ob: &OrderBasis, x: &[BigInt]) -> u32 {
        assert!(x.iter().any(|c| !c.is_zero()), "valuation of zero");
        let q = BigInt::from(self.q);
        let mut cur = x.to_vec();
        let mut v = 0;
        loop {
            let y = ob.mul(&cur, &self.gamma);
            if y.iter().any(|c| !(c % &q).is_zero()) {
                return v;
            }
            cur = y.into_iter().map(|c| c / &q).collect();
            v += 1;
        }
    }

    fn from_ideal(ob: &OrderBasis, q: u64, ideal: Ideal, f: u32) -> Result<PrimeIdeal> {
        let n = ob.degree();
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let w = ob.basis_vector(i);
                ideal.hnf.iter().flat_map(|b| ob.mul(&w, b).iter().map(|c| arith::big_mod(c, q)).collect::<Vec<_>>()).collect()
            })
            .collect();
        let ker = left_kernel_mod(&rows, q);
        let gamma: Elt = ker
            .first()
            .ok_or_else(|| Error::Structural(format!("no anti-uniformizer for a prime above {q}")))?
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        let mut p = PrimeIdeal { q, e: 0, f, ideal, gamma };
        p.e = p.valuation(ob, &ob.from_int(&BigInt::from(q)));
        Ok(p)
    }
}

fn reduce_by(v: &mut [u64], basis: &[Vec<u64>], pivots: &[usize], q: u64) {
    for (row, &pc) in basis.iter().zip(pivots) {
        let c = v[pc];
        if c != 0 {
            for (x, r) in v.iter_mut().zip(row) {
                *x = (*x + q - mul_mod(c, *r, q)) % q;
            }
        }
    }
}

/// Maximal ideals of `O/qO` containing the ideal `j` (an `F_q` subspace
/// containing the radical), returned as subspaces.
fn split_semisimple(ob: &OrderBasis, q: u64, j: Vec<Vec<u64>>) -> Vec<Vec<Vec<u64>>> {
    let n = ob.degree();
    let (jb, jp) = rref_mod(&j, q);
    let unit = |i: usize| -> Vec<u64> { (0..n).map(|k| (k == i) as u64).collect() };
    let images: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let b = unit(i);
            let mut im: Vec<u64> = ob.pow_mod(&b, q as u128, q).iter().zip(&b).map(|(x, y)| (x + q - y) % q).collect();
            reduce_by(&mut im, &jb, &jp, q);
            im
        })
        .collect();
    let fixed = left_kernel_mod(&images, q);
    let s = fixed.len() - jb.len();
    if s <= 1 {
        return vec![jb];
    }
    let one: Vec<u64> = ob.one().iter().map(|c| arith::big_mod(c, q)).collect();
    let mut base = jb.clone();
    base.push(one.clone());
    let base_rank = rref_mod(&base, q).0.len();
    let b = fixed
        .into_iter()
        .find(|v| {
            let mut t = base.clone();
            t.push(v.clone());
            rref_mod(&t, q).0.len() > base_rank
        })
        .expect("separating element exists when s > 1");

    // Minimal polynomial of b modulo j.
    let mut powers: Vec<Vec<u64>> = Vec::new();
    let mut cur = one.clone();
    let minpoly: Vec<u64> = loop {
        let mut red = cur.clone();
        reduce_by(&mut red, &jb, &jp, q);
        powers.push(red);
        let ker = left_kernel_mod(&powers, q);
        if let Some(rel) = ker.first() {
            break rel.clone();
        }
        cur = ob.mul_mod(&cur, &b, q);
    };
    let mut out = Vec::new();
    for c in roots_mod(&minpoly, q) {
        let bc: Vec<u64> = b.iter().zip(&one).map(|(x, o)| (x + q - mul_mod(c, *o, q)) % q).collect();
        let mut rows = jb.clone();
        for i in 0..n {
            rows.push(ob.mul_mod(&bc, &unit(i), q));
        }
        let (sub, _) = rref_mod(&rows, q);
        out.extend(split_semisimple(ob, q, sub));
    }
    out
}

/// Decomposition of `qO` into prime ideals, sorted by norm.
pub fn factor_prime(q: u64, ob: &OrderBasis) -> Result<Vec<PrimeIdeal>> {
    if !arith::is_prime_u64(q) {
        return domain(format!("{q} is not prime"));
    }
    let n = ob.degree();
    let mut primes = Vec::new();
    if !(&ob.index % q).is_zero() {
        for (g, _) in factor_mod(&reduce_int_poly(&ob.poly, q), q) {
            let gz: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
            let ideal = Ideal::from_generators(ob, &[ob.from_int(&BigInt::from(q)), ob.eval_poly(&gz)])?;
            primes.push(PrimeIdeal::from_ideal(ob, q, ideal, (g.len() - 1) as u32)?);
        }
    } else {
        primes = factor_prime_general(q, ob)?;
    }
    let total: u32 = primes.iter().map(|p| p.e * p.f).sum();
    if total as usize != n {
        return Err(Error::Structural(format!("prime decomposition of {q} has Σef = {total}")));
    }
    primes.sort_by(|a, b| (a.f, a.e, &a.ideal.hnf).cmp(&(b.f, b.e, &b.ideal.hnf)));
    Ok(primes)
}

/// Decomposition via the structure of `O/qO`; valid for every `q`.
pub fn factor_prime_general(q: u64, ob: &OrderBasis) -> Result<Vec<PrimeIdeal>> {
    let n = ob.degree();
    let radical = ob.radical_mod(q);
    let maximals = split_semisimple(ob, q, radical);
    maximals
        .into_iter()
        .map(|m| {
            let f = (n - m.len()) as u32;
            let ideal = Ideal { hnf: ob.lift_with_q(&m, q) };
            PrimeIdeal::from_ideal(ob, q, ideal, f)
        })
        .collect()
}
