//! Class numbers of quadratic fields by binary quadratic forms.
//!
//! Definite discriminants count reduced positive forms. Indefinite
//! discriminants enumerate the reduced forms, partition them into cycles of
//! the reduction operator (proper equivalence classes, so the narrow class
//! group), and identify `(A, B, C)` with `(−A, B, −C)` to pass to the wide
//! class group.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{domain, Result};

/// The form `A x² + B xy + C y²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Form {
    #[serde(with = "crate::serde_big")]
    pub a: BigInt,
    #[serde(with = "crate::serde_big")]
    pub b: BigInt,
    #[serde(with = "crate::serde_big")]
    pub c: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassNumberResult {
    pub d: i64,
    /// Class number of `Q(√D)` (wide class group).
    pub h: u64,
    /// Narrow class number; equals `h` for `D < 0`.
    pub h_plus: u64,
    /// Classes of the wide group fixed by the Galois involution.
    pub ambiguous_count: u64,
}

impl Form {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Form { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// Galois conjugate `(A, −B, C)`.
    pub fn conjugate(&self) -> Form {
        Form { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }

    /// `(−A, B, −C)`; same wide class as `self` when a unit of norm −1 exists.
    pub fn negated(&self) -> Form {
        Form { a: -&self.a, b: self.b.clone(), c: -&self.c }
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == BigInt::from(1)
    }

    /// Reduced in the sense of the discriminant's sign.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d.is_negative() {
            let (a, b, c) = (&self.a, &self.b, &self.c);
            let babs = b.abs();
            a.is_positive()
                && babs <= *a
                && a <= c
                && (!b.is_negative() || (babs != *a && a != c))
        } else {
            indefinite_reduced(&self.a, &self.b, &d)
        }
    }
}

/// `0 < B < √D` and `√D − B < 2|A| < √D + B`, decided exactly for
/// nonsquare `D`.
fn indefinite_reduced(a: &BigInt, b: &BigInt, d: &BigInt) -> bool {
    if !b.is_positive() || b * b >= *d {
        return false;
    }
    let two_a: BigInt = a.abs() * 2u32;
    // √D < 2|A| + B
    let lower = {
        let s: BigInt = &two_a + b;
        &s * &s > *d
    };
    // 2|A| − B < √D
    let upper = {
        let t: BigInt = &two_a - b;
        t.is_negative() || &t * &t < *d
    };
    lower && upper
}

fn check_fundamental(d: i64) -> Result<()> {
    if !is_fundamental_discriminant(d) {
        return domain(format!("{d} is not a fundamental discriminant"));
    }
    Ok(())
}

/// Fundamental discriminants: `D ≡ 1 (mod 4)` squarefree, or `D = 4m` with
/// `m ≡ 2, 3 (mod 4)` squarefree. `D = 1` is excluded.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let squarefree = |n: i64| arith::factor_u64(n.unsigned_abs()).iter().all(|&(_, e)| e == 1);
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

/// Reduce a positive definite form.
pub fn reduce_definite(f: &Form) -> Form {
    let (mut a, mut b, mut c) = (f.a.clone(), f.b.clone(), f.c.clone());
    assert!(a.is_positive() && (&b * &b - BigInt::from(4) * &a * &c).is_negative(), "positive definite form required");
    loop {
        // Normalize −a < b <= a.
        if !(b > -&a && b <= a) {
            let two_a: BigInt = &a * 2u32;
            let r = (&a - &b).div_floor(&two_a);
            let b_new = &b + &r * &two_a;
            c = &c + &r * &b + &r * &r * &a;
            b = b_new;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        break;
    }
    if a == c && b.is_negative() {
        b = -b;
    }
    Form { a, b, c }
}

/// One step of the indefinite reduction operator: `(A, B, C) ↦ (C, B', A')`
/// with `B' ≡ −B (mod 2C)` chosen in the reduction window.
pub fn rho(f: &Form) -> Form {
    let d = f.discriminant();
    let root = d.sqrt();
    let c_abs = f.c.abs();
    let two_c: BigInt = &c_abs * 2u32;
    let neg_b = -&f.b;
    let b_new = if c_abs > root {
        // −|C| < B' <= |C|
        let lo: BigInt = -&c_abs + 1u32;
        &lo + (&neg_b - &lo).mod_floor(&two_c)
    } else {
        // √D − 2|C| < B' < √D, i.e. floor(√D) − 2|C| + 1 <= B' <= floor(√D)
        let lo: BigInt = &root - &two_c + 1u32;
        &lo + (&neg_b - &lo).mod_floor(&two_c)
    };
    let a_new = (&b_new * &b_new - &d) / (&f.c * 4u32);
    Form { a: f.c.clone(), b: b_new, c: a_new }
}

/// Reduce an indefinite form by iterating [`rho`].
pub fn reduce_indefinite(f: &Form) -> Form {
    let d = f.discriminant();
    let mut g = f.clone();
    while !indefinite_reduced(&g.a, &g.b, &d) {
        g = rho(&g);
    }
    g
}

fn reduce(f: &Form) -> Form {
    if f.discriminant().is_negative() {
        reduce_definite(f)
    } else {
        reduce_indefinite(f)
    }
}

/// All primitive reduced forms of discriminant `d` (positive forms only
/// when `d < 0`).
pub fn reduced_forms(d: i64) -> Result<Vec<Form>> {
    if d.rem_euclid(4) > 1 || arith::is_square_u64(d.unsigned_abs()) && d > 0 {
        return domain(format!("{d} is not a nonsquare discriminant"));
    }
    let mut out = Vec::new();
    if d < 0 {
        let n = d.unsigned_abs() as i64;
        // |B| <= A <= C ⇒ 3A² <= |D|.
        let a_max = (n / 3).sqrt();
        for a in 1..=a_max {
            for b in -a + 1..=a {
                let t = b * b - d;
                if t % (4 * a) != 0 {
                    continue;
                }
                let c = t / (4 * a);
                let f = Form::new(a, b, c);
                if c >= a && f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
        }
    } else {
        let root = d.sqrt();
        let dd = BigInt::from(d);
        for b in (1..=root).filter(|b| (b - d).rem_euclid(2) == 0) {
            let n = (d - b * b) / 4;
            // 2|A| < √D + B < 2√D.
            for a in (1..=n.min(root)).filter(|a| n % a == 0) {
                for sa in [a, -a] {
                    let (ab, bb) = (BigInt::from(sa), BigInt::from(b));
                    if !indefinite_reduced(&ab, &bb, &dd) {
                        continue;
                    }
                    let f = Form::new(sa, b, -n / sa);
                    if f.is_primitive() {
                        out.push(f);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Cycle index of each reduced indefinite form.
fn cycles(forms: &[Form]) -> (HashMap<Form, usize>, usize) {
    let mut ids: HashMap<Form, usize> = HashMap::new();
    let mut count = 0;
    for f in forms {
        if ids.contains_key(f) {
            continue;
        }
        let mut g = f.clone();
        loop {
            ids.insert(g.clone(), count);
            g = rho(&g);
            if ids.contains_key(&g) {
                break;
            }
        }
        count += 1;
    }
    (ids, count)
}

pub fn class_number(d: i64) -> Result<ClassNumberResult> {
    check_fundamental(d)?;
    let forms = reduced_forms(d)?;
    if d < 0 {
        let h = forms.len() as u64;
        let ambiguous = forms.iter().filter(|f| reduce_definite(&f.conjugate()) == **f).count() as u64;
        return Ok(ClassNumberResult { d, h, h_plus: h, ambiguous_count: ambiguous });
    }
    let (ids, h_plus) = cycles(&forms);
    let representative: Vec<&Form> = {
        let mut rep: Vec<Option<&Form>> = vec![None; h_plus];
        for f in &forms {
            rep[ids[f]].get_or_insert(f);
        }
        rep.into_iter().map(|r| r.expect("each cycle has a form")).collect()
    };
    let tau: Vec<usize> = representative.iter().map(|f| ids[&f.negated()]).collect();
    let sigma: Vec<usize> = representative.iter().map(|f| ids[&reduce_indefinite(&f.conjugate())]).collect();
    // Wide classes are τ-orbits of cycles; label each by its smallest cycle.
    let wide_label = |c: usize| c.min(tau[c]);
    let mut h = 0;
    let mut ambiguous = 0;
    for c in 0..h_plus {
        if wide_label(c) != c {
            continue;
        }
        h += 1;
        if wide_label(sigma[c]) == c {
            ambiguous += 1;
        }
    }
    Ok(ClassNumberResult { d, h, h_plus: h_plus as u64, ambiguous_count: ambiguous })
}

/// Number of wide ideal classes `c` with `c^σ = c`.
pub fn ambiguous_classes(d: i64) -> Result<u64> {
    Ok(class_number(d)?.ambiguous_count)
}

/// Whether `h(Q(√p))` is odd for a prime `p ≡ 1 (mod 4)`.
pub fn is_h_odd(p: u64) -> Result<bool> {
    if p % 4 != 1 || !arith::is_prime_u64(p) {
        return domain(format!("{p} is not a prime ≡ 1 (mod 4)"));
    }
    Ok(class_number(p as i64)?.h % 2 == 1)
}

/// Whether `self` and `other` (same discriminant) are properly equivalent.
pub fn equivalent(f: &Form, g: &Form) -> bool {
    let (rf, rg) = (reduce(f), reduce(g));
    if f.discriminant().is_negative() {
        return rf == rg;
    }
    let mut h = rf.clone();
    loop {
        if h == rg {
            return true;
        }
        h = rho(&h);
        if h == rf {
            return false;
        }
    }
}
