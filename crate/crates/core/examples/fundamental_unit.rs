//! Fundamental units of norm −1 for primes p ≡ 1 (mod 4), with the
//! congruences on a and b for p ≡ 1 (mod 8).
//!
//! Run with `cargo run --release --example fundamental_unit [limit]`.

use qa_core::pell::{check_unit_congruences, continued_fraction_sqrt, fundamental_unit};
use qa_core::verifier::scan_primes;

fn main() -> qa_core::Result<()> {
    let limit = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200u64);
    for p in scan_primes(5, limit, None)?.into_iter().filter(|p| p % 4 == 1) {
        let cf = continued_fraction_sqrt(p)?;
        let u = fundamental_unit(p)?;
        let mut line = format!("p = {p:>5}  period {:>3}  a = {}  b = {}  norm {}", cf.period.len(), u.a, u.b, u.norm());
        if p % 8 == 1 {
            let c = check_unit_congruences(&u)?;
            line.push_str(&format!("  4|a {}  b≡1 (4) {}  prime factors of b ≡ 1 (4): {:?}", c.four_divides_a, c.b_one_mod_four, c.b_prime_factors));
        }
        println!("{line}");
    }
    Ok(())
}
