//! Class groups of every field in the oracle fixture table.
//!
//! Run with `cargo run --release --example quartic_class_group`.

use std::time::Instant;

use qa_core::quartic::{class_group, maximal_order, Fixtures, IntPoly};

fn main() -> qa_core::Result<()> {
    let fixtures = Fixtures::from_env()?;
    for (coeffs, oracle) in fixtures.iter() {
        let start = Instant::now();
        let ob = maximal_order(&IntPoly::from_i64(coeffs)?)?;
        let cg = class_group(&ob, &fixtures)?;
        println!(
            "{:<22} disc {:>10}  bound {:>4}  gens {:>3}  rels {:>4}  h = {} {:?} (oracle {oracle}, {})  {:.2?}",
            format!("{coeffs:?}"),
            cg.disc,
            cg.minkowski_bound,
            cg.factor_base,
            cg.relations,
            cg.h,
            cg.elementary_divisors,
            cg.certified,
            start.elapsed()
        );
    }
    Ok(())
}
