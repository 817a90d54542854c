//! Ambiguous class counts from the ambiguous class number formula over Q,
//! compared with direct counts of classes fixed by conjugation.
//!
//! Run with `cargo run --release --example genus_oracle [bound]`.

use qa_core::ambiguous::{genus_ambiguous_count, ramified_places_q};
use qa_core::bqf::{ambiguous_classes, is_fundamental_discriminant};

fn main() -> qa_core::Result<()> {
    let bound = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500i64);
    let (mut agree, mut total) = (0, 0);
    for d in (-bound..=bound).filter(|&d| is_fundamental_discriminant(d)) {
        let predicted = genus_ambiguous_count(d)?;
        let counted = ambiguous_classes(d)?;
        total += 1;
        if predicted == counted {
            agree += 1;
        } else {
            println!("mismatch at D = {d}: formula {predicted}, forms {counted}");
        }
        if d.abs() < 60 {
            println!("D = {d:>4}  t = {}  formula {predicted}  forms {counted}", ramified_places_q(d).len());
        }
    }
    println!("{agree}/{total} discriminants with |D| ≤ {bound} agree");
    Ok(())
}
