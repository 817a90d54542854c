//! Floating-point embeddings and LLL reduction for the `T2` form.
//!
//! Only used to pick short search directions; every arithmetic fact derived
//! from the search is rechecked exactly.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::order::OrderBasis;

/// Complex roots of a monic polynomial by Durand–Kerner iteration.
pub fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.powf(0.5)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// Embedding data: roots with the conjugate pairs collapsed.
#[derive(Debug, Clone)]
pub struct Embeddings {
    pub real: Vec<f64>,
    pub complex: Vec<Complex64>,
}

impl Embeddings {
    pub fn new(ob: &OrderBasis) -> Embeddings {
        let coeffs: Vec<f64> = ob.poly.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let mut roots = complex_roots(&coeffs);
        roots.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap().then(a.re.partial_cmp(&b.re).unwrap()));
        let real: Vec<f64> = roots[..ob.r1].iter().map(|z| z.re).collect();
        let complex: Vec<Complex64> = roots[ob.r1..].iter().filter(|z| z.im > 0.0).copied().collect();
        Embeddings { real, complex }
    }

    /// Vector in `R^n` whose squared length is `T2(x)`.
    pub fn t2_vector(&self, ob: &OrderBasis, x: &[BigInt]) -> Vec<f64> {
        let c = ob.element_to_power_f64(x);
        let at = |z: Complex64| c.iter().rev().fold(Complex64::zero(), |acc, &k| acc * z + k);
        let mut v: Vec<f64> = self.real.iter().map(|&r| at(Complex64::new(r, 0.0)).re).collect();
        for &z in &self.complex {
            let w = at(z) * std::f64::consts::SQRT_2;
            v.push(w.re);
            v.push(w.im);
        }
        v
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram_schmidt(v: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = v.len();
    let mut star: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut mu = vec![vec![0.0; n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = v[i].clone();
        for j in 0..i {
            mu[i][j] = dot(&v[i], &star[j]) / norms[j];
            for (a, b) in s.iter_mut().zip(&star[j]) {
                *a -= mu[i][j] * b;
            }
        }
        norms.push(dot(&s, &s));
        star.push(s);
    }
    (mu, norms)
}

/// LLL-reduces the lattice with integer basis `basis` (order coordinates)
/// and real images `vecs`; both are transformed together.
pub fn lll(basis: &mut [Vec<BigInt>], vecs: &mut [Vec<f64>]) {
    let n = basis.len();
    let delta = 0.99;
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(vecs);
            let r = mu[k][j].round();
            if r != 0.0 {
                let ri = BigInt::from(r as i64);
                let (bj, vj) = (basis[j].clone(), vecs[j].clone());
                for (a, b) in basis[k].iter_mut().zip(&bj) {
                    *a -= &ri * b;
                }
                for (a, b) in vecs[k].iter_mut().zip(&vj) {
                    *a -= r * b;
                }
            }
        }
        let (mu, norms) = gram_schmidt(vecs);
        if norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1] {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            vecs.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

/// LLL-reduced `Z`-basis of the lattice given by `rows` (order coordinates).
pub fn reduced_basis(ob: &OrderBasis, emb: &Embeddings, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut basis = rows.to_vec();
    let mut vecs: Vec<Vec<f64>> = basis.iter().map(|b| emb.t2_vector(ob, b)).collect();
    lll(&mut basis, &mut vecs);
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| dot(&vecs[a], &vecs[a]).partial_cmp(&dot(&vecs[b], &vecs[b])).unwrap());
    order.into_iter().map(|i| basis[i].clone()).collect()
}

/// Coefficient vectors of sup-norm exactly `r` whose first nonzero entry is
/// positive (one representative of each `±` pair), in a fixed order.
pub fn shell(dim: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-r; dim];
    loop {
        let sup = cur.iter().map(|c| c.abs()).max().unwrap_or(0);
        let first_pos = cur.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
        if sup == r && first_pos {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == dim {
                return out;
            }
            if cur[i] < r {
                cur[i] += 1;
                break;
            }
            cur[i] = -r;
            i += 1;
        }
    }
}

pub fn combine(basis: &[Vec<BigInt>], c: &[i64]) -> Vec<BigInt> {
    let n = basis[0].len();
    let mut out = vec![BigInt::zero(); n];
    for (b, &k) in basis.iter().zip(c) {
        if k != 0 {
            for (o, x) in out.iter_mut().zip(b) {
                *o += x * k;
            }
        }
    }
    out
}
