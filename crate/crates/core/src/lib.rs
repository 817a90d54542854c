//! Exact, auditable checks of the 2-part of the class number of the pure
//! quartic fields `Q(p^(1/4))` for primes `p ≡ 1 (mod 8)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`pell`]: the fundamental unit `ε = a + b√p` of norm −1.
//! * [`quadfield`]: residues and places of `k = Q(√p)`, ramification and
//!   splitting in `k(√δ)/k`.
//! * [`bqf`]: class numbers of quadratic fields by binary quadratic forms,
//!   and ambiguous class counts.
//! * [`ambiguous`]: Hilbert symbols, unit norm indices and the ambiguous
//!   class number formula, assembled into the two proof chains.
//! * [`quartic`]: maximal orders, prime ideals and class groups of quartic
//!   fields.
//! * [`verifier`]: per-prime reports and range scans.
//! * [`cli`]: rendering and the command surface behind the `qa` binary.

#![allow(clippy::needless_range_loop)]

pub mod ambiguous;
pub mod arith;
pub mod bqf;
pub mod cli;
pub mod error;
pub mod pell;
pub mod quadfield;
pub mod quartic;
pub mod verifier;

mod serde_big;
mod serde_big_uint;

pub use error::{Error, Result};
