//! Both ambiguous-class chains, step by step, for a few primes.
//!
//! Run with `cargo run --release --example proof_chains [p ...]`.

use qa_core::ambiguous::{class_number_mod4_chain, odd_class_number_chain, ChainVerdict};

fn show(title: &str, v: &ChainVerdict) {
    println!("  {title}: {}", v.conclusion);
    for s in &v.steps {
        println!("    [{}] {:<16} {}  ({})", if s.pass { "ok" } else { "NO" }, s.name, s.claim, s.witness);
    }
    if let Some(e) = &v.extension {
        println!("    extension over {:?}: δ = {}, t = {}, j = {}", e.base, e.delta, e.t, e.j);
    }
}

fn main() -> qa_core::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let primes = if args.is_empty() { vec![17, 41, 73, 113] } else { args };
    for p in primes {
        println!("p = {p} (≡ {} mod 16)", p % 16);
        show("odd class number of k(√ε)", &odd_class_number_chain(p)?);
        show("class number of Q(p^¼) mod 4", &class_number_mod4_chain(p)?);
    }
    Ok(())
}
