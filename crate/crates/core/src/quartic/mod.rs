//! Quartic fields: maximal orders, prime decomposition, ideal arithmetic
//! and class groups.

pub mod classgroup;
pub mod embed;
pub mod fixtures;
pub mod ideal;
pub mod linalg;
pub mod order;
pub mod poly;

pub use classgroup::{
    class_group, class_group_with, is_principal, is_principal_default, minkowski_bound, minkowski_bound_from,
    pure_quartic, quartic_h_mod4, Certification, ClassGroupConfig, ClassGroupResult, DEEP_PRIMES_1_MOD_16,
    DEEP_PRIMES_9_MOD_16, DEFAULT_DEEP_BOUND, DEFAULT_PRINCIPAL_BOUND,
};
pub use fixtures::{Fixtures, FIXTURES_ENV};
pub use ideal::{factor_prime, ideal_mul, ideal_norm, ideal_reduce_hnf, Ideal, PrimeIdeal};
pub use order::{maximal_order, OrderBasis};
pub use poly::IntPoly;
