//! Wide and narrow class numbers of quadratic fields from reduced forms.
//!
//! Run with `cargo run --release --example quadratic_class_numbers`.

use qa_core::bqf::{class_number, is_fundamental_discriminant};

fn main() -> qa_core::Result<()> {
    println!("imaginary:");
    for d in (-120..0).rev().filter(|&d| is_fundamental_discriminant(d)) {
        let c = class_number(d)?;
        print!(" h({d})={}", c.h);
    }
    println!("\nreal (h, h+):");
    for d in (2..160).filter(|&d| is_fundamental_discriminant(d)) {
        let c = class_number(d)?;
        print!(" {d}:({},{})", c.h, c.h_plus);
    }
    println!();
    for d in [229i64, 401, 577, 1129, 7057] {
        let c = class_number(d)?;
        println!("h(Q(√{d})) = {}  h+ = {}  ambiguous classes = {}", c.h, c.h_plus, c.ambiguous_count);
    }
    Ok(())
}
