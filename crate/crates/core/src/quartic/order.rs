//! Orders in a number field `Q(θ)` given by an integral basis, and the
//! round-2 enlargement to the maximal order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::linalg::{self, hnf, left_kernel_mod, solve_upper_int, solve_upper_rat};
use super::poly::IntPoly;
use crate::arith::{self, mul_mod};
use crate::error::{domain, Error, Result};

/// An order `Z ω_0 + … + Z ω_{n−1}` with `ω_i = (Σ_j basis[i][j] θ^j) / denom`.
///
/// `basis` is lower triangular: `ω_i` has degree `i` in `θ`.
#[derive(Debug, Clone, Serialize)]
pub struct OrderBasis {
    #[serde(skip)]
    pub poly: IntPoly,
    #[serde(with = "crate::serde_big")]
    pub denom: BigInt,
    #[serde(skip)]
    pub basis: Vec<Vec<BigInt>>,
    #[serde(with = "crate::serde_big")]
    pub disc: BigInt,
    #[serde(with = "crate::serde_big")]
    pub index: BigInt,
    pub r1: usize,
    pub r2: usize,
    /// `mult[i][j]` = coordinates of `ω_i ω_j`.
    #[serde(skip)]
    mult: Vec<Vec<Vec<BigInt>>>,
    /// Flattened copy of `mult` when every entry fits in `i64`.
    #[serde(skip)]
    mult_small: Option<Vec<i64>>,
    /// Coordinates of `θ^j`, `j < n`.
    #[serde(skip)]
    theta_pow: Vec<Vec<BigInt>>,
}

/// Element of an order in basis coordinates.
pub type Elt = Vec<BigInt>;

fn reversed(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    rows.iter().rev().map(|r| r.iter().rev().cloned().collect()).collect()
}

fn poly_mul_mod(a: &[BigInt], b: &[BigInt], f: &IntPoly) -> Vec<BigInt> {
    let n = f.degree();
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for k in (n..out.len()).rev() {
        let c = std::mem::take(&mut out[k]);
        if c.is_zero() {
            continue;
        }
        for j in 0..n {
            out[k - n + j] -= &c * &f.coeffs[j];
        }
    }
    out.truncate(n);
    out.resize(n, BigInt::zero());
    out
}

impl OrderBasis {
    /// The equation order `Z[θ]`.
    pub fn equation_order(poly: &IntPoly) -> Result<Self> {
        let n = poly.degree();
        let rows = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect()).collect::<Vec<_>>();
        Self::from_lattice(poly, BigInt::one(), rows)
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Builds an order from numerator rows over `denom`, normalizing the basis.
    pub fn from_lattice(poly: &IntPoly, denom: BigInt, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = poly.degree();
        let h = hnf(&rows.iter().map(|r| r.iter().rev().cloned().collect()).collect::<Vec<_>>(), n);
        if h.len() != n {
            return Err(Error::Structural("order lattice is not of full rank".into()));
        }
        let mut basis = reversed(&h);
        let mut g = denom.clone();
        for r in &basis {
            for x in r {
                g = g.gcd(x);
            }
        }
        let denom = &denom / &g;
        for r in basis.iter_mut() {
            for x in r.iter_mut() {
                *x = &*x / &g;
            }
        }

        let mut ob = OrderBasis {
            poly: poly.clone(),
            denom,
            basis,
            disc: BigInt::zero(),
            index: BigInt::zero(),
            r1: 0,
            r2: 0,
            mult: Vec::new(),
            mult_small: None,
            theta_pow: Vec::new(),
        };
        let d2 = &ob.denom * &ob.denom;
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = poly_mul_mod(&ob.basis[i], &ob.basis[j], poly);
                let w: Vec<BigRational> = prod.into_iter().map(|c| BigRational::new(c, d2.clone())).collect();
                let y = ob
                    .power_to_element(&w)
                    .ok_or_else(|| Error::Structural("basis is not closed under multiplication".into()))?;
                mult[i][j] = y.clone();
                mult[j][i] = y;
            }
        }
        ob.mult = mult;
        ob.mult_small = ob
            .mult
            .iter()
            .flatten()
            .flatten()
            .map(|x| x.to_i64().filter(|v| v.abs() < (1 << 40)))
            .collect::<Option<Vec<i64>>>();
        ob.theta_pow = (0..n)
            .map(|j| {
                let w: Vec<BigRational> = (0..n).map(|k| BigRational::from_integer(BigInt::from((k == j) as u8))).collect();
                ob.power_to_element(&w).ok_or_else(|| Error::Structural("order does not contain θ".into()))
            })
            .collect::<Result<_>>()?;

        let diag: BigInt = (0..n).map(|i| ob.basis[i][i].abs()).product();
        let dn = num_traits::pow(ob.denom.clone(), n);
        let (index, rem) = dn.div_rem(&diag);
        if !rem.is_zero() {
            return Err(Error::Structural("order does not contain the equation order".into()));
        }
        ob.disc = poly.discriminant() / (&index * &index);
        ob.index = index;
        ob.r1 = poly.real_root_count();
        ob.r2 = (n - ob.r1) / 2;
        Ok(ob)
    }

    /// Coordinates of a power-basis element, or `None` if it is not in the order.
    pub fn power_to_element(&self, w: &[BigRational]) -> Option<Elt> {
        let d = BigRational::from_integer(self.denom.clone());
        let target: Vec<BigRational> = w.iter().rev().map(|x| x * &d).collect();
        let y = solve_upper_rat(&reversed(&self.basis), &target);
        y.into_iter().rev().map(|r| if r.is_integer() { Some(r.to_integer()) } else { None }).collect()
    }

    /// Power-basis numerators over `denom`.
    pub fn element_to_power(&self, x: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree();
        (0..n).map(|j| (0..n).map(|i| &x[i] * &self.basis[i][j]).sum()).collect()
    }

    pub fn element_to_power_f64(&self, x: &[BigInt]) -> Vec<f64> {
        let d = self.denom.to_f64().unwrap_or(f64::INFINITY);
        self.element_to_power(x).iter().map(|c| c.to_f64().unwrap_or(f64::NAN) / d).collect()
    }

    pub fn one(&self) -> Elt {
        self.theta_pow[0].clone()
    }

    pub fn from_int(&self, c: &BigInt) -> Elt {
        self.one().iter().map(|x| x * c).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Elt {
        (0..self.degree()).map(|k| BigInt::from((k == i) as u8)).collect()
    }

    /// `g(θ)` for integer coefficients `g`.
    pub fn eval_poly(&self, g: &[BigInt]) -> Elt {
        let n = self.degree();
        let mut acc = vec![BigInt::zero(); n];
        // Horner in the order.
        let theta = self.theta_pow.get(1).cloned().unwrap_or_else(|| self.one());
        for c in g.iter().rev() {
            acc = self.mul(&acc, &theta);
            for (a, o) in acc.iter_mut().zip(self.one()) {
                *a += c * o;
            }
        }
        acc
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Elt {
        let n = self.degree();
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (k, t) in self.mult[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Multiplication in `O/qO` on reduced coordinates.
    pub fn mul_mod(&self, x: &[u64], y: &[u64], q: u64) -> Vec<u64> {
        let n = self.degree();
        let mut out = vec![0u64; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let c = mul_mod(x[i], y[j], q);
                for (k, t) in self.mult[i][j].iter().enumerate() {
                    let t = arith::big_mod(t, q);
                    out[k] = (out[k] + mul_mod(c, t, q)) % q;
                }
            }
        }
        out
    }

    pub fn pow_mod(&self, x: &[u64], mut e: u128, q: u64) -> Vec<u64> {
        let mut acc: Vec<u64> = self.one().iter().map(|c| arith::big_mod(c, q)).collect();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &b, q);
            }
            b = self.mul_mod(&b, &b, q);
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `x`: row `i` = coordinates of `x ω_i`.
    pub fn mult_matrix(&self, x: &[BigInt]) -> Vec<Vec<BigInt>> {
        (0..self.degree()).map(|i| self.mul(x, &self.basis_vector(i))).collect()
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        if let Some(v) = self.norm_small(x) {
            return BigInt::from(v);
        }
        linalg::det(&self.mult_matrix(x))
    }

    /// Norm in `i128` when nothing overflows.
    pub fn norm_small(&self, x: &[BigInt]) -> Option<i128> {
        let xs: Vec<i64> = x.iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
        self.norm_i64(&xs)
    }

    pub fn norm_i64(&self, x: &[i64]) -> Option<i128> {
        let t = self.mult_small.as_ref()?;
        let n = self.degree();
        let mut m = vec![vec![0i128; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, &xj) in x.iter().enumerate() {
                if xj == 0 {
                    continue;
                }
                let base = (j * n + i) * n;
                for k in 0..n {
                    let v = (xj as i128).checked_mul(t[base + k] as i128)?;
                    row[k] = row[k].checked_add(v)?;
                }
            }
        }
        det_i128(m)
    }

    /// Radical of `O/qO` as a basis of `F_q`-vectors.
    pub fn radical_mod(&self, q: u64) -> Vec<Vec<u64>> {
        let n = self.degree();
        let mut e: u128 = q as u128;
        while e < n as u128 {
            e *= q as u128;
        }
        let images: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let b: Vec<u64> = (0..n).map(|k| (k == i) as u64).collect();
                self.pow_mod(&b, e, q)
            })
            .collect();
        left_kernel_mod(&images, q)
    }

    /// HNF (in order coordinates) of `qO + lift(vectors)`.
    pub fn lift_with_q(&self, vectors: &[Vec<u64>], q: u64) -> Vec<Vec<BigInt>> {
        let n = self.degree();
        let mut rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.iter().map(|&c| BigInt::from(c)).collect()).collect();
        for i in 0..n {
            rows.push((0..n).map(|k| if k == i { BigInt::from(q) } else { BigInt::zero() }).collect());
        }
        hnf(&rows, n)
    }

    /// One round-2 step at `q`; `None` when the order is already `q`-maximal.
    fn enlarge_at(&self, q: u64) -> Result<Option<OrderBasis>> {
        let n = self.degree();
        let ideal = self.lift_with_q(&self.radical_mod(q), q);
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let w = self.basis_vector(i);
                let mut row = Vec::with_capacity(n * n);
                for beta in &ideal {
                    let prod = self.mul(&w, beta);
                    let y = solve_upper_int(&ideal, &prod).expect("radical is an ideal");
                    row.extend(y.iter().map(|c| arith::big_mod(c, q)));
                }
                row
            })
            .collect();
        let ker = left_kernel_mod(&rows, q);
        if ker.is_empty() {
            return Ok(None);
        }
        let u = self.lift_with_q(&ker, q);
        let new_rows: Vec<Vec<BigInt>> = u.iter().map(|x| self.element_to_power(x)).collect();
        Ok(Some(OrderBasis::from_lattice(&self.poly, &self.denom * q, new_rows)?))
    }
}

fn det_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign)
}

/// Prime factors of `|n|` (all of them, no multiplicities).
pub(crate) fn prime_divisors(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let m = n.abs();
    if let Some(v) = m.to_u64() {
        return Ok(arith::factor_u64(v));
    }
    let primes = arith::primes_up_to(1_000_000);
    let tf = arith::trial_factor(m.magnitude(), &primes, 1_000_000);
    match tf.cofactor_kind {
        arith::Cofactor::One => Ok(tf.factors),
        arith::Cofactor::Prime | arith::Cofactor::ProbablePrime => {
            let mut f = tf.factors;
            f.push((tf.cofactor.to_u64().ok_or_else(|| Error::Domain("discriminant has a huge prime factor".into()))?, 1));
            Ok(f)
        }
        arith::Cofactor::Composite => domain("discriminant too hard to factor"),
    }
}

/// Maximal order of `Q[x]/(f)` for a monic irreducible integer quartic.
pub fn maximal_order(poly: &IntPoly) -> Result<OrderBasis> {
    if poly.degree() != 4 {
        return domain("defining polynomial must be a quartic");
    }
    if !poly.is_irreducible()? {
        return domain("defining polynomial is reducible over Q");
    }
    let mut order = OrderBasis::equation_order(poly)?;
    for (q, e) in prime_divisors(&poly.discriminant())? {
        if e < 2 {
            continue;
        }
        while let Some(bigger) = order.enlarge_at(q)? {
            order = bigger;
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn pure_quartic_basis() {
        let f = IntPoly::from_i64(&[-41, 0, 0, 0, 1]).unwrap();
        let o = maximal_order(&f).unwrap();
        assert_eq!(o.disc, BigInt::from(-275684));
        assert_eq!(o.index, BigInt::from(8));
        assert_eq!((o.r1, o.r2), (2, 1));
        // (x³ − x² + x − 1)/4 is integral.
        let w: Vec<BigRational> = [-1, 1, -1, 1].iter().map(|&c| BigRational::new(BigInt::from(c), BigInt::from(4))).collect();
        assert!(o.power_to_element(&w).is_some());
    }

    #[test]
    fn discriminants_match_reference() {
        for (c, d) in [
            ([-17i64, 0, 0, 0, 1], -19652i64),
            ([-113, 0, 0, 0, 1], -5771588),
            ([-2, 0, 0, 0, 1], -2048),
            ([-1, 0, -8, 0, 1], -1156),
            ([-1, 0, -64, 0, 1], -6724),
        ] {
            let o = maximal_order(&IntPoly::from_i64(&c).unwrap()).unwrap();
            assert_eq!(o.disc, BigInt::from(d), "{c:?}");
        }
    }

    #[test]
    fn norms_and_products() {
        let f = IntPoly::from_i64(&[-41, 0, 0, 0, 1]).unwrap();
        let o = maximal_order(&f).unwrap();
        let theta = o.eval_poly(&ints(&[0, 1]));
        assert_eq!(o.norm(&theta), BigInt::from(-41));
        let x = o.eval_poly(&ints(&[3, -1, 2]));
        let y = o.eval_poly(&ints(&[1, 1, 0, 1]));
        assert_eq!(o.norm(&o.mul(&x, &y)), o.norm(&x) * o.norm(&y));
        assert_eq!(o.norm(&o.one()), BigInt::one());
    }

    #[test]
    fn reducible_rejected() {
        let f = IntPoly::from_i64(&[-4, 0, 0, 0, 1]).unwrap();
        assert!(matches!(maximal_order(&f), Err(Error::Domain(_))));
        let f = IntPoly::from_i64(&[-2, 0, 1]).unwrap();
        assert!(matches!(maximal_order(&f), Err(Error::Domain(_))));
    }
}
