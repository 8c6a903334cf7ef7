//! Integer arithmetic: factorization, residue symbols, modular square roots,
//! prime representations by binary forms and the `delta` invariants.

mod arith;
mod prime;
mod represent;
mod symbols;

pub use arith::{gcd, gcd_i128, is_square, isqrt, mul_mod, pow_mod};
pub use prime::{distinct_prime_factors, factor_squarefree, is_prime, SquarefreeInteger};
pub use represent::{
    delta_n, delta_p, delta_p_verified, li_tian_conditions, represent_prime, LiTianConditions,
    PrimeRepresentations,
};
pub use symbols::{
    additive_legendre, hilbert_symbol, is_padic_unit_square, jacobi, legendre, quartic_symbol,
    quartic_symbol_composite, sqrt_mod, sqrt_mod_prime_power, OddPrime, Place,
};
