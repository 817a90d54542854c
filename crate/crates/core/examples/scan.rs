//! Sequential scan over a range of primes with a verdict tally.
//!
//! Run with `cargo run --release --example scan [lo] [hi] [deep_max]`.

use std::collections::BTreeMap;

use qa_core::verifier::{scan_range, Verdict, VerifyConfig};

fn main() -> qa_core::Result<()> {
    let arg = |i: usize, d: u64| std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(d);
    let (lo, hi, deep_max) = (arg(1, 1), arg(2, 2000), arg(3, 150));
    let cfg = VerifyConfig { deep_bound: deep_max, ..VerifyConfig::default() };
    let mut tally: BTreeMap<(u8, String), usize> = BTreeMap::new();
    for report in scan_range(lo, hi, None, deep_max, true, &cfg)? {
        let r = report?;
        if r.overall == Verdict::Fail {
            println!("FAIL at p = {}", r.p);
        }
        if let Some(d) = &r.deep {
            println!("p = {:>3}: h(Q(p^¼)) = {} ({})", r.p, d.h, d.certified);
        }
        *tally.entry((r.class_mod16, r.overall.to_string())).or_default() += 1;
    }
    for ((m, v), n) in tally {
        println!("p ≡ {m:>2} (mod 16): {n:>4} {v}");
    }
    Ok(())
}
