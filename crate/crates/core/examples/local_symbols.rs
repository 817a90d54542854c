//! Local data of ε over k = Q(√p): 2-adic embeddings, ramification in
//! k(√ε) and k(√(ε√p)), and norm symbols at the ramified places.
//!
//! Run with `cargo run --release --example local_symbols [p]`.

use qa_core::ambiguous::{compute_j, local_norm_symbol_k};
use qa_core::pell::fundamental_unit;
use qa_core::quadfield::{
    embed_dyadic, legendre, local_residue_at_2, order_mod_p, quad_ramified_places, residue_mod_sqrtp, sqrt_2adic, PlaceK,
    QuadInt,
};

fn main() -> qa_core::Result<()> {
    let p = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(41u64);
    let u = fundamental_unit(p)?;
    let eps = QuadInt::from_unit(&u);
    println!("p = {p}, ε = {eps}");
    println!("√p in Z_2 (mod 2^16): {}", sqrt_2adic(p, 16)? % (1u32 << 16));
    for place in [PlaceK::DyadicPlus, PlaceK::DyadicMinus] {
        println!("  {place}: ε ↦ {} (mod 2^10), ε mod 4 = {}", embed_dyadic(&eps, place, 10)?, local_residue_at_2(&eps, place)?);
    }

    let ram = quad_ramified_places(&eps)?;
    println!("ramified in k(√ε)/k: {}", ram.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    let minus_one = QuadInt::from_int(p, -1);
    for &place in &ram {
        println!("  (−1, ε) at {place} = {:+}", local_norm_symbol_k(&minus_one, &eps, place)?);
    }
    println!("  j = {}", compute_j(&[minus_one.clone(), eps.clone()], &eps, &ram)?);

    let eps_root = eps.mul(&QuadInt::sqrt_p(p));
    let ram2 = quad_ramified_places(&eps_root)?;
    println!("ramified in k(√(ε√p))/k: {}", ram2.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));

    let a = residue_mod_sqrtp(&eps);
    println!("ε mod √p = {a}: order {} in F_{p}^×, Legendre symbol {:+}", order_mod_p(a, p)?, legendre(a, p));
    Ok(())
}
