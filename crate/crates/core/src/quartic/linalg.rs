//! Exact linear algebra: HNF and Smith diagonal over `Z`, rational
//! triangular solves, and row reduction over `F_q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{inv_mod, mul_mod};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    &a[n - 1][n - 1] * sign
}

/// Row Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows in echelon form: leading entries positive,
/// entries above each leading entry reduced into `[0, pivot)`. The result
/// depends only on the lattice.
pub fn hnf(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for col in 0..ncols {
        if r >= m.len() {
            break;
        }
        let mut have_pivot = false;
        for i in r..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            if !have_pivot {
                m.swap(r, i);
                have_pivot = true;
                continue;
            }
            let a = m[r][col].clone();
            let b = m[i][col].clone();
            let eg = a.extended_gcd(&b);
            let (ag, bg) = (&a / &eg.gcd, &b / &eg.gcd);
            let (row_r, row_i) = (m[r].clone(), m[i].clone());
            for j in col..ncols {
                m[r][j] = &eg.x * &row_r[j] + &eg.y * &row_i[j];
                m[i][j] = &bg * &row_r[j] - &ag * &row_i[j];
            }
        }
        if !have_pivot {
            continue;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = m[r].clone();
        for k in 0..r {
            let qk = m[k][col].div_floor(&pivot_row[col]);
            if !qk.is_zero() {
                for j in col..ncols {
                    let t = &qk * &pivot_row[j];
                    m[k][j] -= t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Solves `y · H = w` for an upper-triangular `H` with nonzero diagonal.
/// Returns `None` if the solution is not integral.
pub fn solve_upper_int(h: &[Vec<BigInt>], w: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len();
    let mut y: Vec<BigInt> = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = w[j].clone();
        for (i, yi) in y.iter().enumerate() {
            acc -= yi * &h[i][j];
        }
        let (qt, rm) = acc.div_rem(&h[j][j]);
        if !rm.is_zero() {
            return None;
        }
        y.push(qt);
    }
    Some(y)
}

/// Rational version of [`solve_upper_int`].
pub fn solve_upper_rat(h: &[Vec<BigInt>], w: &[BigRational]) -> Vec<BigRational> {
    let n = h.len();
    let mut y: Vec<BigRational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = w[j].clone();
        for (i, yi) in y.iter().enumerate() {
            acc -= yi * BigRational::from_integer(h[i][j].clone());
        }
        y.push(acc / BigRational::from_integer(h[j][j].clone()));
    }
    y
}

/// Diagonal of the Smith normal form (nonnegative, each dividing the next;
/// zeros for rank deficiency).
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                diag.extend(std::iter::repeat_n(BigInt::zero(), rows.min(cols) - t));
                return diag;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let qt = a[i][t].div_floor(&p);
                if !qt.is_zero() {
                    for j in t..cols {
                        let v = &qt * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let qt = a[t][j].div_floor(&p);
                if !qt.is_zero() {
                    for i in t..rows {
                        let v = &qt * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the whole trailing block.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Reduced row echelon form over `F_q`; returns the nonzero rows and their
/// pivot columns.
pub fn rref_mod(rows: &[Vec<u64>], q: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % q).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, i);
        let inv = inv_mod(m[r][c], q).expect("field");
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, q);
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for j in 0..cols {
                    row[j] = (row[j] + q - mul_mod(f, pivot_row[j], q)) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{ c : Σ c_i · rows_i = 0 }` over `F_q`.
pub fn left_kernel_mod(rows: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let k = rows.len();
    if k == 0 {
        return Vec::new();
    }
    let cols = rows[0].len();
    // Right kernel of the transpose.
    let t: Vec<Vec<u64>> = (0..cols).map(|j| (0..k).map(|i| rows[i][j] % q).collect()).collect();
    let (r, pivots) = rref_mod(&t, q);
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; k];
            v[f] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = (q - row[f]) % q;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&big(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])), BigInt::from(0));
        assert_eq!(det(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&big(&[&[4, 3, 2, 1], &[0, 1, 5, 2], &[3, 0, 1, 0], &[1, 1, 1, 7]])), BigInt::from(280));
    }

    #[test]
    fn hnf_example() {
        let rows = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let h = hnf(&rows, 3);
        assert_eq!(h.len(), 3);
        let diag: BigInt = (0..3).map(|i| h[i][i].clone()).product();
        assert_eq!(diag, det(&rows).abs());
        for r in &rows {
            assert!(solve_upper_int(&h, r).is_some());
        }
        for j in 0..3 {
            for i in 0..j {
                assert!(!h[i][j].is_negative() && h[i][j] < h[j][j]);
            }
        }
        let h = hnf(&big(&[&[3, 1], &[6, 2]]), 2);
        assert_eq!(h, big(&[&[3, 1]]));
    }

    #[test]
    fn smith_example() {
        let d = smith_diagonal(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = smith_diagonal(&big(&[&[4, 0], &[0, 6]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn kernel_mod_q() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let ker = left_kernel_mod(&rows, 7);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        for j in 0..3 {
            assert_eq!((0..3).map(|i| v[i] * rows[i][j]).sum::<u64>() % 7, 0);
        }
    }
}
